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

// The alpha-shifted entropy function
//
//   f_alpha(X) = 0                        if X is empty
//              = alpha - H(V) + H(X)      otherwise,
//
// its Dilworth truncation (minimum block sum over partitions), and the
// prefix-restricted minimization of f_alpha(X) - r(X).

#ifndef SOMNI_SUBMODULAR_H_
#define SOMNI_SUBMODULAR_H_

#include <cstdint>
#include <optional>

#include "somni/core.h"
#include "somni/kernels.h"
#include "somni/sources.h"

namespace somni {

class AlphaFunction {
 public:
  // Throws DomainError unless 0 <= alpha <= H(V). The table must outlive
  // this object.
  AlphaFunction(const EntropyTable& entropy, Rational alpha);

  const EntropyTable& entropy() const { return *entropy_; }
  const Rational& alpha() const { return alpha_; }
  Rational operator()(Subset x) const;

 private:
  const EntropyTable* entropy_;
  Rational alpha_;
};

struct DilworthResult {
  Rational value;
  Partition minimizer;  // earliest minimizing partition in enumeration order
};

// min over partitions P of x of sum_{C in P} f_alpha(C), by exhaustive
// enumeration. Throws DomainError if x is empty.
DilworthResult DilworthTruncation(const AlphaFunction& f, Subset x,
                                  kernels::Exec exec = kernels::Exec::kParallel);

struct SfmResult {
  Rational min_value;
  Subset a_minimizer;
  Subset minimal_minimizer;
  Subset maximal_minimizer;
  // A minimizer X with |X| >= 2 and X != V, if any: fewest users first, then
  // smallest bitmask.
  std::optional<Subset> nonsingleton_proper_minimizer;
  std::uint64_t candidates = 0;
};

// min of f_alpha(X) - r(X) over X subset of V_i with i in X, where V_i holds
// the first i+1 users in ground-set order. r must cover the ground set.
SfmResult MinimizeOverPrefix(const AlphaFunction& f, const RateVector& r, int i,
                             kernels::Exec exec = kernels::Exec::kParallel);

}  // namespace somni

#endif  // SOMNI_SUBMODULAR_H_
