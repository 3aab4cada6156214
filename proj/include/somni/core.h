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

// Shared vocabulary: exact rationals, user subsets as bitmasks over a fixed
// ground-set order, rate vectors and set partitions.

#ifndef SOMNI_CORE_H_
#define SOMNI_CORE_H_

#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

namespace somni {

// Always in lowest terms with a positive denominator.
using Rational = boost::rational<std::int64_t>;

Rational Ceil(const Rational& x);
Rational Floor(const Rational& x);
inline bool IsIntegral(const Rational& x) { return x.denominator() == 1; }

// "p/q", or "p" when the denominator is one.
std::string ToString(const Rational& x);
// Accepts "p/q", "p" and surrounding whitespace. Throws FormatError.
Rational ParseRational(std::string_view text);

// Subsets are bitmasks, so every oracle can enumerate 2^|V| sets.
inline constexpr int kMaxUsers = 20;

// A subset of the ground set; bit i is the i-th user in ground-set order.
class Subset {
 public:
  constexpr Subset() = default;
  constexpr explicit Subset(std::uint32_t bits) : bits_(bits) {}

  static constexpr Subset Singleton(int i) { return Subset(1u << i); }
  // The first n users {0, ..., n-1}.
  static constexpr Subset FirstN(int n) {
    return Subset(n >= 32 ? ~0u : (1u << n) - 1u);
  }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(int i) const { return (bits_ >> i) & 1u; }
  constexpr bool IsSubsetOf(Subset other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  // Index of the lowest member; undefined on the empty set.
  constexpr int Lowest() const { return std::countr_zero(bits_); }
  constexpr int Highest() const { return 31 - std::countl_zero(bits_); }

  std::vector<int> Members() const;

  template <typename F>
  void ForEachMember(F&& f) const {
    for (std::uint32_t b = bits_; b != 0; b &= b - 1) f(std::countr_zero(b));
  }

  constexpr Subset operator|(Subset o) const { return Subset(bits_ | o.bits_); }
  constexpr Subset operator&(Subset o) const { return Subset(bits_ & o.bits_); }
  constexpr Subset operator-(Subset o) const {
    return Subset(bits_ & ~o.bits_);
  }
  constexpr Subset& operator|=(Subset o) {
    bits_ |= o.bits_;
    return *this;
  }
  constexpr Subset& operator&=(Subset o) {
    bits_ &= o.bits_;
    return *this;
  }
  constexpr auto operator<=>(const Subset&) const = default;

 private:
  std::uint32_t bits_ = 0;
};

// The ordered user set V. The order fixes the prefixes V_i used by the
// prefix minimization and never changes after construction.
class GroundSet {
 public:
  // Throws DomainError unless 2 <= |labels| <= kMaxUsers and labels are
  // distinct and nonempty.
  explicit GroundSet(std::vector<std::string> labels);

  int size() const { return static_cast<int>(labels_.size()); }
  const std::string& label(int i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }
  Subset All() const { return Subset::FirstN(size()); }
  // V_i: users 0..i inclusive.
  Subset Prefix(int i) const { return Subset::FirstN(i + 1); }

  // Throws DomainError for an unknown label.
  int IndexOf(std::string_view label) const;
  std::optional<int> Find(std::string_view label) const;
  bool Contains(Subset s) const { return s.IsSubsetOf(All()); }

  // Throws DomainError for an unknown label.
  Subset SubsetOf(std::span<const std::string> labels) const;
  // "{1,2,5}" using user labels in ground-set order.
  std::string Format(Subset s) const;

  bool operator==(const GroundSet&) const = default;

 private:
  std::vector<std::string> labels_;
};

// Per-user rates over a domain X of the ground set. r(C) is the exact sum.
class RateVector {
 public:
  RateVector() = default;
  // All rates in `domain` start at zero.
  RateVector(int num_users, Subset domain);
  RateVector(Subset domain, std::vector<Rational> rates);

  int num_users() const { return static_cast<int>(rates_.size()); }
  Subset domain() const { return domain_; }
  // Indexed by user; zero outside the domain.
  std::span<const Rational> values() const { return rates_; }

  // Throws DomainError if i is outside the domain.
  const Rational& operator[](int i) const;
  Rational& operator[](int i);

  // r(C); r(empty) = 0. Throws DomainError unless C is inside the domain.
  Rational Sum(Subset c) const;
  Rational Total() const { return Sum(domain_); }

  bool AllNonNegative() const;
  bool AllIntegral() const;

  RateVector& operator+=(const RateVector& other);
  bool operator==(const RateVector&) const = default;

 private:
  Subset domain_;
  std::vector<Rational> rates_;
};

// A partition of a ground subset X into disjoint nonempty blocks.
struct Partition {
  Subset ground;
  std::vector<Subset> blocks;

  int size() const { return static_cast<int>(blocks.size()); }
  // Blocks pairwise disjoint, nonempty, and covering `ground` exactly.
  bool IsValid() const;
  bool operator==(const Partition&) const = default;
};

std::string Format(const GroundSet& users, const Partition& p);

// Restricted growth strings a_0 a_1 ... a_{n-1} with a_0 = 0 and
// a_j <= 1 + max(a_0..a_{j-1}), in lexicographic order. Digit a_j is the block
// of the j-th element, so each string is one set partition.
//
// An optional fixed prefix restricts the walk to strings extending it; the
// walks over all prefixes of one length, in prefix order, concatenate to the
// unrestricted walk.
class RestrictedGrowthString {
 public:
  explicit RestrictedGrowthString(int length,
                                  std::span<const int> prefix = {});

  std::span<const int> digits() const { return digits_; }
  int num_blocks() const { return running_max_.empty() ? 0 : running_max_.back() + 1; }
  // Moves to the next string; false once the walk is exhausted.
  bool Advance();

 private:
  int fixed_;
  std::vector<int> digits_;
  std::vector<int> running_max_;
};

// All restricted growth strings of the given length, in order.
std::vector<std::vector<int>> AllRestrictedGrowthStrings(int length);

// Calls f(std::span<const Subset> blocks) for every partition of x, in
// restricted-growth-string order over the members of x (ascending index).
// The span is only valid for the duration of the call.
template <typename F>
void ForEachPartition(Subset x, std::span<const int> prefix, F&& f) {
  const std::vector<int> members = x.Members();
  const int n = static_cast<int>(members.size());
  RestrictedGrowthString rgs(n, prefix);
  std::vector<Subset> blocks;
  blocks.reserve(n);
  do {
    blocks.assign(rgs.num_blocks(), Subset());
    const auto digits = rgs.digits();
    for (int j = 0; j < n; ++j) blocks[digits[j]] |= Subset::Singleton(members[j]);
    f(std::span<const Subset>(blocks));
  } while (rgs.Advance());
}

template <typename F>
void ForEachPartition(Subset x, F&& f) {
  ForEachPartition(x, std::span<const int>(), std::forward<F>(f));
}

// Pull-style stream over the partitions of a nonempty subset.
class PartitionEnumerator {
 public:
  // Throws DomainError if x is empty.
  explicit PartitionEnumerator(Subset x);
  std::optional<Partition> Next();

 private:
  Subset ground_;
  std::vector<int> members_;
  RestrictedGrowthString rgs_;
  bool done_ = false;
};

}  // namespace somni

#endif  // SOMNI_CORE_H_
