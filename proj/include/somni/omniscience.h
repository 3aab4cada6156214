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

// Minimum sum-rates for omniscience, Slepian-Wolf feasibility, and the two
// exact complementarity tests (sum-rate inequality and Dilworth equality).

#ifndef SOMNI_OMNISCIENCE_H_
#define SOMNI_OMNISCIENCE_H_

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "somni/core.h"
#include "somni/kernels.h"
#include "somni/sources.h"

namespace somni {

// Asymptotic: real-valued rates. Non-asymptotic: integral rates, whose
// minimum sum-rate is the ceiling of the asymptotic one.
enum class Model { kAsymptotic, kNonAsymptotic };

const char* ToString(Model model);
// "asymptotic" or "non-asymptotic"; throws FormatError otherwise.
Model ParseModel(std::string_view text);

struct MinSumRateResult {
  Model model;
  Rational value;
  Rational asymptotic_value;
  // Earliest maximizing partition in enumeration order.
  Partition maximizing_partition;
  std::uint64_t partitions_scanned = 0;
};

// Minimum sum-rate for omniscience in x:
//   max over partitions P of x, |P| >= 2, of sum_{C in P} (H(x)-H(C))/(|P|-1),
// ceiled in the non-asymptotic model. Throws DomainError if |x| < 2.
MinSumRateResult MinSumRate(const EntropyTable& h, Subset x, Model model,
                            kernels::Exec exec = kernels::Exec::kParallel);

struct SwCheck {
  bool achievable = false;
  std::optional<Subset> violating;  // smallest-bitmask violated C
  explicit operator bool() const { return achievable; }
};

// r(C) >= H(x) - H(x - C) for every proper subset C of x.
SwCheck CheckSwAchievable(const EntropyTable& h, Subset x, const RateVector& r,
                          kernels::Exec exec = kernels::Exec::kParallel);

// H(V) - H(x) + R(x) <= R(V) with R the model's minimum sum-rate. x must be a
// proper subset of V with at least two users (DomainError otherwise).
bool IsComplementary(const EntropyTable& h, Subset x, Model model);

// f_alpha(x) equals its Dilworth truncation at x.
bool DilworthTight(const EntropyTable& h, const Rational& alpha, Subset x,
                   kernels::Exec exec = kernels::Exec::kSerial);

enum class ComplementarityTest {
  kSumRate,   // the sum-rate inequality above
  kDilworth,  // Dilworth tightness at alpha = R(V)
};

// All complementary subsets, ordered by size then lexicographically.
std::vector<Subset> EnumerateComplementary(
    const EntropyTable& h, Model model,
    ComplementarityTest test = ComplementarityTest::kSumRate,
    kernels::Exec exec = kernels::Exec::kParallel);

// Runs both tests and throws CertificationError if they disagree.
std::vector<Subset> EnumerateComplementaryVerified(
    const EntropyTable& h, Model model,
    kernels::Exec exec = kernels::Exec::kParallel);

// An optimal rate vector for global omniscience: the prefix-minimization
// update loop run to completion at alpha = R(V). Throws CertificationError if
// the result is not SW-feasible with sum R(V).
RateVector OptimalRateVector(const EntropyTable& h, Model model);

}  // namespace somni

#endif  // SOMNI_OMNISCIENCE_H_
