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

// Complementary-subset search for successive omniscience.
//
// Starting from r_1 = f_alpha({1}) and r_i = alpha - H(V) for i > 1, users are
// visited in ground-set order. At user i the search minimizes
// f_alpha(X) - r(X) over X subset of V_i containing i. A minimizer with at
// least two users that is a proper subset of V is returned as complementary;
// otherwise r_i grows by the minimum value. When the loop finishes without a
// subset, r is an optimal rate vector and no complementary subset exists.

#ifndef SOMNI_COMPSETSO_H_
#define SOMNI_COMPSETSO_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "somni/core.h"
#include "somni/kernels.h"
#include "somni/omniscience.h"
#include "somni/sources.h"

namespace somni {

enum class AlphaMode {
  kExact,       // alpha = R(V)
  kLowerBound,  // alpha = sum_i (H(V) - H({i})) / (|V| - 1), ceiled if integral model
  kCustom,      // any other alpha; outcomes are only certified as experimental
};

const char* ToString(AlphaMode mode);
// "exact" or "lower-bound"; throws FormatError otherwise.
AlphaMode ParseAlphaMode(std::string_view text);

struct AlphaChoice {
  AlphaMode mode;
  Model model;
  Rational value;

  static AlphaChoice Exact(const EntropyTable& h, Model model);
  static AlphaChoice LowerBound(const EntropyTable& h, Model model);
  static AlphaChoice Custom(Model model, Rational value);
  static AlphaChoice Make(const EntropyTable& h, AlphaMode mode, Model model);
};

// sum_{i in V} (H(V) - H({i})) / (|V| - 1), ceiled in the non-asymptotic
// model. Never exceeds the minimum sum-rate.
Rational AlphaLowerBound(const EntropyTable& h, Model model);

struct CompSetOptions {
  // Stop at the first non-singleton proper minimizer. Disabled, the loop
  // always runs to completion and yields an optimal rate vector.
  bool early_exit = true;
  // Called with (step, r) after initialization (step 0) and after every
  // update of r_step.
  std::function<void(int, const RateVector&)> observer;
  kernels::Exec exec = kernels::Exec::kParallel;
};

struct CompSetOutcome {
  std::optional<Subset> complementary_subset;
  // User index at which the subset was found, or -1.
  int trigger_user = -1;
  // State of r at exit; the finished rate vector when no subset was found.
  RateVector rates;
  // Candidate sets examined across all prefix minimizations.
  std::uint64_t candidates = 0;

  bool found() const { return complementary_subset.has_value(); }
};

// Throws DomainError unless 0 <= alpha <= H(V).
CompSetOutcome CompSetSO(const EntropyTable& h, const AlphaChoice& alpha,
                         const CompSetOptions& options = {});

struct Certificate {
  bool experimental = false;
  std::string text;
};

// Re-derives the outcome's guarantee from the exact oracles:
//   subset found       the subset passes the sum-rate complementarity test
//                      (and Dilworth tightness at exact alpha);
//   no subset          alpha equals the minimum sum-rate, the finished rates
//                      are SW-feasible with sum alpha (integral in the
//                      non-asymptotic model), and, for |V| up to
//                      kExhaustiveCertifyLimit, no complementary subset exists.
// Throws CertificationError when a check fails. Custom alpha yields an
// experimental certificate and never throws.
Certificate CertifyOutcome(const EntropyTable& h, const AlphaChoice& alpha,
                           const CompSetOutcome& outcome);

inline constexpr int kExhaustiveCertifyLimit = 10;

}  // namespace somni

#endif  // SOMNI_COMPSETSO_H_
