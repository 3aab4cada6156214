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

// Enumeration kernels behind the exact oracles. Every kernel has a serial
// reference path and an OpenMP path; both return identical results because
// each reduction uses an order-independent key (value, then cardinality or
// bitmask, or enumeration position for partitions).
//
// The OpenMP path falls back to serial inside an enclosing parallel region
// and below kParallelThreshold work items.

#ifndef SOMNI_KERNELS_H_
#define SOMNI_KERNELS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "somni/core.h"
#include "somni/sources.h"

namespace somni::kernels {

enum class Exec { kSerial, kParallel };

inline constexpr std::uint64_t kParallelThreshold = 64;

// H(X) for every X, indexed by bitmask.
std::vector<Rational> EntropyValues(const SourceModel& source,
                                    Exec exec = Exec::kParallel);

EntropyTable BuildEntropyTable(const SourceModel& source,
                               Exec exec = Exec::kParallel);

// Minimum of g(X) = alpha - H(V) + H(X) - r(X) over {X subset of V_i : i in X}.
struct PrefixMinimum {
  Rational value;
  Subset first;                             // smallest-bitmask minimizer
  Subset minimal;                           // intersection of all minimizers
  Subset maximal;                           // union of all minimizers
  std::optional<Subset> nonsingleton_proper;  // fewest users, then bitmask
  std::uint64_t candidates = 0;
};

PrefixMinimum MinimizeOverPrefix(const EntropyTable& h, const Rational& alpha,
                                 std::span<const Rational> rates, int i,
                                 Exec exec = Exec::kParallel);

// Smallest-bitmask proper subset C of x with r(C) < H(x) - H(x - C).
std::optional<Subset> FindSwViolation(const EntropyTable& h, Subset x,
                                      std::span<const Rational> rates,
                                      Exec exec = Exec::kParallel);

// Smallest-bitmask nonempty X with r(X) > alpha - H(V) + H(X).
std::optional<Subset> FindPolyhedronViolation(const EntropyTable& h,
                                              const Rational& alpha,
                                              std::span<const Rational> rates,
                                              Exec exec = Exec::kParallel);

// Best partition found by a partition scan; ties keep the earliest partition
// in restricted-growth-string order.
struct PartitionOptimum {
  Rational value;
  std::vector<Subset> blocks;
  std::uint64_t partitions = 0;
};

// max over partitions P of x with |P| >= 2 of
//   sum_{C in P} (H(x) - H(C)) / (|P| - 1).
// Requires |x| >= 2.
PartitionOptimum MaxPartitionRatio(const EntropyTable& h, Subset x,
                                   Exec exec = Exec::kParallel);

// min over partitions P of x of sum_{C in P} (alpha - H(V) + H(C)).
// Requires x nonempty.
PartitionOptimum MinPartitionSum(const EntropyTable& h, const Rational& alpha,
                                 Subset x, Exec exec = Exec::kParallel);

}  // namespace somni::kernels

#endif  // SOMNI_KERNELS_H_
