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

#include "somni/sources.h"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>

#include "somni/errors.h"

namespace somni {
namespace {

void CheckInside(const GroundSet& users, Subset x) {
  if (!users.Contains(x)) {
    throw DomainError("subset mentions users outside the ground set");
  }
}

}  // namespace

PacketSource::PacketSource(GroundSet users,
                           std::vector<std::vector<std::string>> possession,
                           std::vector<std::string> universe)
    : users_(std::move(users)), universe_(std::move(universe)) {
  if (static_cast<int>(possession.size()) != users_.size()) {
    throw DomainError("packet lists do not match the number of users");
  }
  if (universe_.empty()) {
    std::set<std::string> all;
    for (const auto& list : possession) all.insert(list.begin(), list.end());
    universe_.assign(all.begin(), all.end());
  } else if (std::set<std::string>(universe_.begin(), universe_.end()).size() !=
             universe_.size()) {
    throw DomainError("duplicate packet id in universe");
  }
  std::map<std::string, int> index;
  for (int p = 0; p < num_packets(); ++p) index[universe_[p]] = p;

  const std::size_t words = (universe_.size() + 63) / 64;
  held_.resize(possession.size());
  bits_.assign(possession.size(), std::vector<std::uint64_t>(words, 0));
  for (std::size_t u = 0; u < possession.size(); ++u) {
    for (const auto& id : possession[u]) {
      auto it = index.find(id);
      if (it == index.end()) {
        throw DomainError("packet \"" + id + "\" of user \"" +
                          users_.label(static_cast<int>(u)) +
                          "\" is not in the universe");
      }
      bits_[u][it->second / 64] |= std::uint64_t{1} << (it->second % 64);
    }
    for (int p = 0; p < num_packets(); ++p) {
      if ((bits_[u][p / 64] >> (p % 64)) & 1u) held_[u].push_back(p);
    }
  }
}

std::vector<int> PacketSource::PacketsOf(Subset x) const {
  CheckInside(users_, x);
  std::vector<bool> any(universe_.size(), false);
  x.ForEachMember([&](int u) {
    for (int p : held_[u]) any[p] = true;
  });
  std::vector<int> out;
  for (int p = 0; p < num_packets(); ++p) {
    if (any[p]) out.push_back(p);
  }
  return out;
}

Rational PacketSource::Entropy(Subset x) const {
  CheckInside(users_, x);
  const std::size_t words = bits_.empty() ? 0 : bits_[0].size();
  std::int64_t count = 0;
  for (std::size_t w = 0; w < words; ++w) {
    std::uint64_t acc = 0;
    x.ForEachMember([&](int u) { acc |= bits_[u][w]; });
    count += std::popcount(acc);
  }
  return Rational(count);
}

LinearSource::LinearSource(GroundSet users, PrimeField field, int dimension,
                           std::vector<std::vector<Row>> observations)
    : users_(std::move(users)),
      field_(field),
      dimension_(dimension),
      observations_(std::move(observations)) {
  if (static_cast<int>(observations_.size()) != users_.size()) {
    throw DomainError("observation lists do not match the number of users");
  }
  for (const auto& rows : observations_) {
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != dimension_) {
        throw DomainError("coding row of wrong dimension");
      }
      for (FieldElement x : r) {
        if (x >= field_.order()) throw DomainError("coefficient outside GF(q)");
      }
    }
  }
}

LinearSource LinearSource::Lift(const PacketSource& packets, int chunks,
                                PrimeField field) {
  if (chunks < 1) throw DomainError("chunk factor must be positive");
  const int dim = packets.num_packets() * chunks;
  std::vector<std::vector<Row>> obs(packets.users().size());
  for (int u = 0; u < packets.users().size(); ++u) {
    for (int p : packets.packets_of(u)) {
      for (int c = 0; c < chunks; ++c) {
        Row r(dim, 0);
        r[p * chunks + c] = 1;
        obs[u].push_back(std::move(r));
      }
    }
  }
  return LinearSource(packets.users(), field, dim, std::move(obs));
}

int LinearSource::RankOf(Subset x) const {
  CheckInside(users_, x);
  SpanBasis basis(field_, dimension_);
  x.ForEachMember([&](int u) {
    for (const Row& r : observations_[u]) {
      if (basis.rank() == dimension_) return;
      basis.Insert(r);
    }
  });
  return basis.rank();
}

const char* ToString(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kNormalization:
      return "normalization";
    case ViolationKind::kMonotonicity:
      return "monotonicity";
    case ViolationKind::kSubmodularity:
      return "submodularity";
  }
  return "?";
}

PolymatroidReport ValidatePolymatroid(int num_users,
                                      std::span<const Rational> h) {
  if (num_users < 1 || num_users > kMaxUsers ||
      h.size() != (std::size_t{1} << num_users)) {
    throw FormatError("entropy table must list all 2^" +
                      std::to_string(num_users) + " subsets");
  }
  PolymatroidReport report;
  if (h[0] != Rational(0)) {
    report.violations.push_back({ViolationKind::kNormalization, Subset(), -1, -1});
  }
  const std::uint32_t full = (1u << num_users) - 1;
  for (std::uint32_t b = 0; b <= full; ++b) {
    const Subset base(b);
    for (int i = 0; i < num_users; ++i) {
      if (base.contains(i)) continue;
      const Subset bi = base | Subset::Singleton(i);
      if (h[bi.bits()] < h[b]) {
        report.violations.push_back({ViolationKind::kMonotonicity, base, i, -1});
      }
      for (int j = i + 1; j < num_users; ++j) {
        if (base.contains(j)) continue;
        const Subset bj = base | Subset::Singleton(j);
        const Subset bij = bi | bj;
        if (h[bi.bits()] + h[bj.bits()] < h[bij.bits()] + h[b]) {
          report.violations.push_back(
              {ViolationKind::kSubmodularity, base, i, j});
        }
      }
    }
  }
  return report;
}

std::string Describe(const GroundSet& users, const PolymatroidReport& report) {
  std::ostringstream out;
  if (report.valid()) {
    out << "valid polymatroid\n";
    return out.str();
  }
  out << "invalid: " << report.violations.size() << " violation(s)\n";
  for (const auto& v : report.violations) {
    out << "  " << ToString(v.kind);
    switch (v.kind) {
      case ViolationKind::kNormalization:
        out << ": H({}) != 0";
        break;
      case ViolationKind::kMonotonicity:
        out << ": H(" << users.Format(v.base) << ") > H("
            << users.Format(v.base | Subset::Singleton(v.i)) << ")";
        break;
      case ViolationKind::kSubmodularity:
        out << ": base " << users.Format(v.base) << ", users "
            << users.label(v.i) << "," << users.label(v.j);
        break;
    }
    out << "\n";
  }
  return out.str();
}

TableSource::TableSource(GroundSet users, std::vector<Rational> entropy)
    : users_(std::move(users)), entropy_(std::move(entropy)) {
  const PolymatroidReport report = ValidatePolymatroid(users_.size(), entropy_);
  if (!report.valid()) {
    throw DomainError("entropy table is not a polymatroid: " +
                      Describe(users_, report));
  }
}

const GroundSet& Users(const SourceModel& source) {
  return std::visit([](const auto& s) -> const GroundSet& { return s.users(); },
                    source);
}

Rational Entropy(const SourceModel& source, Subset x) {
  CheckInside(Users(source), x);
  return std::visit([&](const auto& s) { return s.Entropy(x); }, source);
}

Rational ConditionalEntropy(const SourceModel& source, Subset a, Subset c) {
  if (!(a & c).empty()) {
    throw DomainError("conditional entropy needs disjoint subsets");
  }
  return Entropy(source, a | c) - Entropy(source, c);
}

namespace {

// perm[new_index] = old_index.
std::vector<int> Permutation(const GroundSet& users,
                             std::span<const std::string> order) {
  if (static_cast<int>(order.size()) != users.size()) {
    throw DomainError("user order must list every user exactly once");
  }
  std::vector<int> perm;
  std::set<int> seen;
  for (const auto& label : order) {
    const int i = users.IndexOf(label);
    if (!seen.insert(i).second) {
      throw DomainError("user \"" + label + "\" repeated in order");
    }
    perm.push_back(i);
  }
  return perm;
}

Subset Permute(Subset new_set, const std::vector<int>& perm) {
  Subset old;
  new_set.ForEachMember([&](int k) { old |= Subset::Singleton(perm[k]); });
  return old;
}

}  // namespace

SourceModel Reorder(const SourceModel& source,
                    std::span<const std::string> order) {
  const GroundSet& users = Users(source);
  const std::vector<int> perm = Permutation(users, order);
  GroundSet reordered(std::vector<std::string>(order.begin(), order.end()));
  if (const auto* p = std::get_if<PacketSource>(&source)) {
    std::vector<std::vector<std::string>> lists;
    for (int old : perm) {
      std::vector<std::string> ids;
      for (int k : p->packets_of(old)) ids.push_back(p->universe()[k]);
      lists.push_back(std::move(ids));
    }
    return PacketSource(reordered, std::move(lists), p->universe());
  }
  if (const auto* l = std::get_if<LinearSource>(&source)) {
    std::vector<std::vector<Row>> obs;
    for (int old : perm) obs.push_back(l->rows_of(old));
    return LinearSource(reordered, l->field(), l->dimension(), std::move(obs));
  }
  const auto& t = std::get<TableSource>(source);
  std::vector<Rational> values(t.values().size());
  for (std::uint32_t b = 0; b < values.size(); ++b) {
    values[b] = t.Entropy(Permute(Subset(b), perm));
  }
  return TableSource(reordered, std::move(values));
}

EntropyTable::EntropyTable(GroundSet users, std::vector<Rational> values)
    : users_(std::move(users)), values_(std::move(values)) {
  if (values_.size() != (std::size_t{1} << users_.size())) {
    throw DomainError("entropy table size does not match the ground set");
  }
}

bool EntropyTable::AllIntegral() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](const Rational& v) { return IsIntegral(v); });
}

Subset Embed(Subset parent_domain, Subset local) {
  Subset out;
  int k = 0;
  parent_domain.ForEachMember([&](int i) {
    if (local.contains(k)) out |= Subset::Singleton(i);
    ++k;
  });
  return out;
}

EntropyTable EntropyTable::Restrict(Subset x) const {
  if (!users_.Contains(x)) throw DomainError("restriction outside ground set");
  std::vector<std::string> labels;
  x.ForEachMember([&](int i) { labels.push_back(users_.label(i)); });
  GroundSet sub(std::move(labels));
  std::vector<Rational> values(std::size_t{1} << sub.size());
  for (std::uint32_t b = 0; b < values.size(); ++b) {
    values[b] = values_[Embed(x, Subset(b)).bits()];
  }
  return EntropyTable(std::move(sub), std::move(values));
}

}  // namespace somni
