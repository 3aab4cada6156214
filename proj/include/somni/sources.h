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

// Entropy oracles H(X) for the supported source models. Unit: one packet
// (one uniform symbol) has entropy 1; linear sources report rank in symbols
// of their own field.

#ifndef SOMNI_SOURCES_H_
#define SOMNI_SOURCES_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "somni/core.h"
#include "somni/gf.h"

namespace somni {

// Each user holds a set of packets; every packet is an independent uniform
// symbol, so H(X) counts the distinct packets held by X.
class PacketSource {
 public:
  // `possession[k]` lists packet ids held by user k. When `universe` is
  // empty it is the union of all lists. Throws DomainError on packets outside
  // the universe or a size mismatch.
  PacketSource(GroundSet users, std::vector<std::vector<std::string>> possession,
               std::vector<std::string> universe = {});

  const GroundSet& users() const { return users_; }
  const std::vector<std::string>& universe() const { return universe_; }
  int num_packets() const { return static_cast<int>(universe_.size()); }
  // Indices into universe(), ascending.
  const std::vector<int>& packets_of(int user) const { return held_.at(user); }
  // Distinct packets held by some user in x, as universe indices.
  std::vector<int> PacketsOf(Subset x) const;

  Rational Entropy(Subset x) const;

 private:
  GroundSet users_;
  std::vector<std::string> universe_;
  std::vector<std::vector<int>> held_;
  std::vector<std::vector<std::uint64_t>> bits_;
};

// Each user observes linear combinations (coding rows) of a common vector of
// d symbols over GF(q); H(X) is the rank of the stacked rows of X.
class LinearSource {
 public:
  LinearSource(GroundSet users, PrimeField field, int dimension,
               std::vector<std::vector<Row>> observations);

  // Identity coding rows over (packet, chunk) columns: packet p, chunk c maps
  // to column p * chunks + c. Entropy is then measured in chunks.
  static LinearSource Lift(const PacketSource& packets, int chunks,
                           PrimeField field);

  const GroundSet& users() const { return users_; }
  const PrimeField& field() const { return field_; }
  int dimension() const { return dimension_; }
  const std::vector<Row>& rows_of(int user) const {
    return observations_.at(user);
  }

  int RankOf(Subset x) const;
  Rational Entropy(Subset x) const { return Rational(RankOf(x)); }

 private:
  GroundSet users_;
  PrimeField field_;
  int dimension_;
  std::vector<std::vector<Row>> observations_;
};

enum class ViolationKind { kNormalization, kMonotonicity, kSubmodularity };

const char* ToString(ViolationKind kind);

// Local form of the polymatroid axioms:
//   normalization   H(empty) = 0
//   monotonicity    H(base) <= H(base + i)
//   submodularity   H(base + i) + H(base + j) >= H(base + i + j) + H(base)
struct PolymatroidViolation {
  ViolationKind kind;
  Subset base;
  int i = -1;
  int j = -1;
};

struct PolymatroidReport {
  std::vector<PolymatroidViolation> violations;
  bool valid() const { return violations.empty(); }
};

// `entropy` is indexed by subset bitmask and must cover all 2^n subsets
// (FormatError otherwise). Reports every violated local triple.
PolymatroidReport ValidatePolymatroid(int num_users,
                                      std::span<const Rational> entropy);

std::string Describe(const GroundSet& users, const PolymatroidReport& report);

// An explicit entropy table over all subsets.
class TableSource {
 public:
  // Throws DomainError when the table is not a polymatroid.
  TableSource(GroundSet users, std::vector<Rational> entropy);

  const GroundSet& users() const { return users_; }
  const std::vector<Rational>& values() const { return entropy_; }
  Rational Entropy(Subset x) const { return entropy_[x.bits()]; }

 private:
  GroundSet users_;
  std::vector<Rational> entropy_;
};

using SourceModel = std::variant<PacketSource, LinearSource, TableSource>;

const GroundSet& Users(const SourceModel& source);

// Throws DomainError if x contains users outside the ground set.
Rational Entropy(const SourceModel& source, Subset x);
// H(a | c) = H(a + c) - H(c). Throws DomainError if a and c overlap.
Rational ConditionalEntropy(const SourceModel& source, Subset a, Subset c);

// The same source with users listed in `order` (a permutation of the labels).
SourceModel Reorder(const SourceModel& source,
                    std::span<const std::string> order);

// Dense cache of H over all 2^|V| subsets; the form every oracle works on.
class EntropyTable {
 public:
  EntropyTable(GroundSet users, std::vector<Rational> values);

  const GroundSet& users() const { return users_; }
  int num_users() const { return users_.size(); }
  Subset All() const { return users_.All(); }
  const Rational& operator()(Subset x) const { return values_[x.bits()]; }
  const std::vector<Rational>& values() const { return values_; }
  bool AllIntegral() const;

  // The table of the subsystem on x, users renumbered in ground-set order.
  // Requires |x| >= 2.
  EntropyTable Restrict(Subset x) const;

 private:
  GroundSet users_;
  std::vector<Rational> values_;
};

// Maps a subset of the restricted ground set back to the parent's indices.
Subset Embed(Subset parent_domain, Subset local);

}  // namespace somni

#endif  // SOMNI_SOURCES_H_
