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

#include "somni/submodular.h"

#include "somni/errors.h"

namespace somni {

AlphaFunction::AlphaFunction(const EntropyTable& entropy, Rational alpha)
    : entropy_(&entropy), alpha_(alpha) {
  if (alpha_ < Rational(0) || alpha_ > entropy(entropy.All())) {
    throw DomainError("alpha " + ToString(alpha_) + " outside [0, H(V)] = [0, " +
                      ToString(entropy(entropy.All())) + "]");
  }
}

Rational AlphaFunction::operator()(Subset x) const {
  if (!entropy_->users().Contains(x)) {
    throw DomainError("subset outside ground set");
  }
  if (x.empty()) return 0;
  return alpha_ - (*entropy_)(entropy_->All()) + (*entropy_)(x);
}

DilworthResult DilworthTruncation(const AlphaFunction& f, Subset x,
                                  kernels::Exec exec) {
  auto best = kernels::MinPartitionSum(f.entropy(), f.alpha(), x, exec);
  return {best.value, Partition{x, std::move(best.blocks)}};
}

SfmResult MinimizeOverPrefix(const AlphaFunction& f, const RateVector& r, int i,
                             kernels::Exec exec) {
  if (r.num_users() != f.entropy().num_users() ||
      r.domain() != f.entropy().All()) {
    throw DomainError("rate vector must be defined on the whole ground set");
  }
  const auto m =
      kernels::MinimizeOverPrefix(f.entropy(), f.alpha(), r.values(), i, exec);
  return SfmResult{m.value,   m.first,
                   m.minimal, m.maximal,
                   m.nonsingleton_proper, m.candidates};
}

}  // namespace somni
