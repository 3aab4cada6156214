// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "somni/core.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

#include "somni/errors.h"

namespace somni {

Rational Floor(const Rational& x) {
  std::int64_t q = x.numerator() / x.denominator();
  if (x.numerator() % x.denominator() != 0 && x.numerator() < 0) --q;
  return Rational(q);
}

Rational Ceil(const Rational& x) {
  std::int64_t q = x.numerator() / x.denominator();
  if (x.numerator() % x.denominator() != 0 && x.numerator() > 0) ++q;
  return Rational(q);
}

std::string ToString(const Rational& x) {
  if (x.denominator() == 1) return std::to_string(x.numerator());
  return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::int64_t ParseInt(std::string_view s, std::string_view whole) {
  s = Trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw FormatError("invalid rational \"" + std::string(whole) + "\"");
  }
  return v;
}

}  // namespace

Rational ParseRational(std::string_view text) {
  const std::string_view s = Trim(text);
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(ParseInt(s, text));
  const std::int64_t num = ParseInt(s.substr(0, slash), text);
  const std::int64_t den = ParseInt(s.substr(slash + 1), text);
  if (den == 0) {
    throw FormatError("zero denominator in \"" + std::string(text) + "\"");
  }
  return Rational(num, den);
}

std::vector<int> Subset::Members() const {
  std::vector<int> out;
  out.reserve(size());
  ForEachMember([&](int i) { out.push_back(i); });
  return out;
}

GroundSet::GroundSet(std::vector<std::string> labels)
    : labels_(std::move(labels)) {
  if (labels_.size() < 2) {
    throw DomainError("ground set needs at least two users");
  }
  if (labels_.size() > static_cast<std::size_t>(kMaxUsers)) {
    throw DomainError("ground set exceeds " + std::to_string(kMaxUsers) +
                      " users");
  }
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (l.empty()) throw DomainError("empty user label");
    if (!seen.insert(l).second) {
      throw DomainError("duplicate user label \"" + l + "\"");
    }
  }
}

std::optional<int> GroundSet::Find(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<int>(it - labels_.begin());
}

int GroundSet::IndexOf(std::string_view label) const {
  if (auto i = Find(label)) return *i;
  throw DomainError("unknown user \"" + std::string(label) + "\"");
}

Subset GroundSet::SubsetOf(std::span<const std::string> labels) const {
  Subset s;
  for (const auto& l : labels) s |= Subset::Singleton(IndexOf(l));
  return s;
}

std::string GroundSet::Format(Subset s) const {
  std::string out = "{";
  bool first = true;
  s.ForEachMember([&](int i) {
    if (!first) out += ",";
    out += i < size() ? labels_[i] : "?" + std::to_string(i);
    first = false;
  });
  return out + "}";
}

RateVector::RateVector(int num_users, Subset domain)
    : domain_(domain), rates_(num_users) {
  if (!domain.IsSubsetOf(Subset::FirstN(num_users))) {
    throw DomainError("rate vector domain exceeds the ground set");
  }
}

RateVector::RateVector(Subset domain, std::vector<Rational> rates)
    : domain_(domain), rates_(std::move(rates)) {
  if (!domain.IsSubsetOf(Subset::FirstN(num_users()))) {
    throw DomainError("rate vector domain exceeds the ground set");
  }
  for (int i = 0; i < num_users(); ++i) {
    if (!domain_.contains(i) && rates_[i] != Rational(0)) {
      throw DomainError("nonzero rate outside the rate vector domain");
    }
  }
}

const Rational& RateVector::operator[](int i) const {
  if (i < 0 || i >= num_users() || !domain_.contains(i)) {
    throw DomainError("user " + std::to_string(i) +
                      " outside the rate vector domain");
  }
  return rates_[i];
}

Rational& RateVector::operator[](int i) {
  if (i < 0 || i >= num_users() || !domain_.contains(i)) {
    throw DomainError("user " + std::to_string(i) +
                      " outside the rate vector domain");
  }
  return rates_[i];
}

Rational RateVector::Sum(Subset c) const {
  if (!c.IsSubsetOf(domain_)) {
    throw DomainError("subset is not inside the rate vector domain");
  }
  Rational total = 0;
  c.ForEachMember([&](int i) { total += rates_[i]; });
  return total;
}

bool RateVector::AllNonNegative() const {
  return std::all_of(rates_.begin(), rates_.end(),
                     [](const Rational& r) { return r >= Rational(0); });
}

bool RateVector::AllIntegral() const {
  return std::all_of(rates_.begin(), rates_.end(),
                     [](const Rational& r) { return IsIntegral(r); });
}

RateVector& RateVector::operator+=(const RateVector& other) {
  if (other.num_users() != num_users()) {
    throw DomainError("rate vectors over different ground sets");
  }
  domain_ |= other.domain_;
  for (int i = 0; i < num_users(); ++i) rates_[i] += other.rates_[i];
  return *this;
}

bool Partition::IsValid() const {
  Subset seen;
  for (Subset b : blocks) {
    if (b.empty() || !(seen & b).empty()) return false;
    seen |= b;
  }
  return seen == ground;
}

std::string Format(const GroundSet& users, const Partition& p) {
  std::string out = "{";
  for (int k = 0; k < p.size(); ++k) {
    if (k > 0) out += ",";
    out += users.Format(p.blocks[k]);
  }
  return out + "}";
}

RestrictedGrowthString::RestrictedGrowthString(int length,
                                               std::span<const int> prefix)
    : fixed_(static_cast<int>(prefix.size())),
      digits_(length, 0),
      running_max_(length, 0) {
  if (fixed_ > length) throw DomainError("prefix longer than the string");
  int max = -1;
  for (int j = 0; j < length; ++j) {
    const int d = j < fixed_ ? prefix[j] : 0;
    if (d < 0 || d > max + 1) {
      throw DomainError("prefix is not a restricted growth string");
    }
    digits_[j] = d;
    max = std::max(max, d);
    running_max_[j] = max;
  }
}

bool RestrictedGrowthString::Advance() {
  const int n = static_cast<int>(digits_.size());
  for (int j = n - 1; j >= std::max(fixed_, 1); --j) {
    if (digits_[j] <= running_max_[j - 1]) {
      ++digits_[j];
      running_max_[j] = std::max(running_max_[j - 1], digits_[j]);
      for (int k = j + 1; k < n; ++k) {
        digits_[k] = 0;
        running_max_[k] = running_max_[j];
      }
      return true;
    }
  }
  return false;
}

std::vector<std::vector<int>> AllRestrictedGrowthStrings(int length) {
  std::vector<std::vector<int>> out;
  RestrictedGrowthString rgs(length);
  do {
    out.emplace_back(rgs.digits().begin(), rgs.digits().end());
  } while (rgs.Advance());
  return out;
}

PartitionEnumerator::PartitionEnumerator(Subset x)
    : ground_(x), members_(x.Members()), rgs_(x.size()) {
  if (x.empty()) throw DomainError("cannot partition the empty set");
}

std::optional<Partition> PartitionEnumerator::Next() {
  if (done_) return std::nullopt;
  Partition p{ground_, std::vector<Subset>(rgs_.num_blocks())};
  const auto digits = rgs_.digits();
  for (std::size_t j = 0; j < members_.size(); ++j) {
    p.blocks[digits[j]] |= Subset::Singleton(members_[j]);
  }
  done_ = !rgs_.Advance();
  return p;
}

}  // namespace somni
