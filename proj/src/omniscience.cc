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

#include "somni/omniscience.h"

#include <algorithm>

#include "somni/compsetso.h"
#include "somni/errors.h"
#include "somni/submodular.h"

namespace somni {

const char* ToString(Model model) {
  return model == Model::kAsymptotic ? "asymptotic" : "non-asymptotic";
}

Model ParseModel(std::string_view text) {
  if (text == "asymptotic") return Model::kAsymptotic;
  if (text == "non-asymptotic" || text == "nonasymptotic") {
    return Model::kNonAsymptotic;
  }
  throw FormatError("unknown model \"" + std::string(text) + "\"");
}

MinSumRateResult MinSumRate(const EntropyTable& h, Subset x, Model model,
                            kernels::Exec exec) {
  if (x.size() < 2) {
    throw DomainError("minimum sum-rate needs a subset with at least two users");
  }
  auto best = kernels::MaxPartitionRatio(h, x, exec);
  MinSumRateResult out;
  out.model = model;
  out.asymptotic_value = best.value;
  out.value = model == Model::kAsymptotic ? best.value : Ceil(best.value);
  out.maximizing_partition = Partition{x, std::move(best.blocks)};
  out.partitions_scanned = best.partitions;
  return out;
}

SwCheck CheckSwAchievable(const EntropyTable& h, Subset x, const RateVector& r,
                          kernels::Exec exec) {
  if (!x.IsSubsetOf(r.domain()) || r.num_users() != h.num_users()) {
    throw DomainError("rate vector is not defined on the subset");
  }
  SwCheck out;
  out.violating = kernels::FindSwViolation(h, x, r.values(), exec);
  out.achievable = !out.violating.has_value();
  return out;
}

namespace {

void CheckCandidate(const EntropyTable& h, Subset x) {
  if (!h.users().Contains(x)) throw DomainError("subset outside ground set");
  if (x.size() < 2 || x == h.All()) {
    throw DomainError("complementary subsets are non-singleton proper subsets");
  }
}

bool SumRateTest(const EntropyTable& h, Subset x, Model model,
                 const Rational& global_rate) {
  const Rational local =
      MinSumRate(h, x, model, kernels::Exec::kSerial).value;
  return h(h.All()) - h(x) + local <= global_rate;
}

}  // namespace

bool IsComplementary(const EntropyTable& h, Subset x, Model model) {
  CheckCandidate(h, x);
  return SumRateTest(h, x, model, MinSumRate(h, h.All(), model).value);
}

bool DilworthTight(const EntropyTable& h, const Rational& alpha, Subset x,
                   kernels::Exec exec) {
  const AlphaFunction f(h, alpha);
  return f(x) == DilworthTruncation(f, x, exec).value;
}

std::vector<Subset> EnumerateComplementary(const EntropyTable& h, Model model,
                                           ComplementarityTest test,
                                           kernels::Exec exec) {
  const Rational global = MinSumRate(h, h.All(), model, exec).value;
  const std::uint32_t full = h.All().bits();
  std::vector<Subset> candidates;
  for (std::uint32_t b = 1; b < full; ++b) {
    if (std::popcount(b) >= 2) candidates.emplace_back(b);
  }
  std::vector<char> keep(candidates.size(), 0);
  auto decide = [&](Subset x) {
    return test == ComplementarityTest::kSumRate
               ? SumRateTest(h, x, model, global)
               : DilworthTight(h, global, x);
  };
  const auto n = static_cast<std::int64_t>(candidates.size());
  const bool threads = exec == kernels::Exec::kParallel &&
                       candidates.size() >= kernels::kParallelThreshold;
#pragma omp parallel for schedule(dynamic) if (threads)
  for (std::int64_t k = 0; k < n; ++k) keep[k] = decide(candidates[k]);

  std::vector<Subset> out;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (keep[k]) out.push_back(candidates[k]);
  }
  std::sort(out.begin(), out.end(), [](Subset a, Subset b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.Members() < b.Members();
  });
  return out;
}

std::vector<Subset> EnumerateComplementaryVerified(const EntropyTable& h,
                                                   Model model,
                                                   kernels::Exec exec) {
  auto by_rate =
      EnumerateComplementary(h, model, ComplementarityTest::kSumRate, exec);
  auto by_dilworth =
      EnumerateComplementary(h, model, ComplementarityTest::kDilworth, exec);
  if (by_rate != by_dilworth) {
    throw CertificationError(
        "sum-rate and Dilworth complementarity tests disagree");
  }
  return by_rate;
}

RateVector OptimalRateVector(const EntropyTable& h, Model model) {
  const AlphaChoice alpha = AlphaChoice::Exact(h, model);
  CompSetOptions options;
  options.early_exit = false;
  const CompSetOutcome outcome = CompSetSO(h, alpha, options);
  const RateVector& r = outcome.rates;
  if (r.Total() != alpha.value || !CheckSwAchievable(h, h.All(), r)) {
    throw CertificationError("optimal rate vector failed its SW certificate");
  }
  if (model == Model::kNonAsymptotic && h.AllIntegral() && !r.AllIntegral()) {
    throw CertificationError("non-asymptotic optimal rate vector not integral");
  }
  return r;
}

}  // namespace somni
