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

#include "somni/compsetso.h"

#include <sstream>

#include "somni/errors.h"
#include "somni/submodular.h"

namespace somni {

const char* ToString(AlphaMode mode) {
  switch (mode) {
    case AlphaMode::kExact:
      return "exact";
    case AlphaMode::kLowerBound:
      return "lower-bound";
    case AlphaMode::kCustom:
      return "custom";
  }
  return "?";
}

AlphaMode ParseAlphaMode(std::string_view text) {
  if (text == "exact") return AlphaMode::kExact;
  if (text == "lower-bound" || text == "lower_bound") {
    return AlphaMode::kLowerBound;
  }
  throw FormatError("unknown alpha mode \"" + std::string(text) + "\"");
}

Rational AlphaLowerBound(const EntropyTable& h, Model model) {
  const int n = h.num_users();
  const Rational hv = h(h.All());
  Rational sum = 0;
  for (int i = 0; i < n; ++i) sum += hv - h(Subset::Singleton(i));
  const Rational bound = sum / static_cast<std::int64_t>(n - 1);
  return model == Model::kAsymptotic ? bound : Ceil(bound);
}

AlphaChoice AlphaChoice::Exact(const EntropyTable& h, Model model) {
  return {AlphaMode::kExact, model, MinSumRate(h, h.All(), model).value};
}

AlphaChoice AlphaChoice::LowerBound(const EntropyTable& h, Model model) {
  return {AlphaMode::kLowerBound, model, AlphaLowerBound(h, model)};
}

AlphaChoice AlphaChoice::Custom(Model model, Rational value) {
  return {AlphaMode::kCustom, model, value};
}

AlphaChoice AlphaChoice::Make(const EntropyTable& h, AlphaMode mode,
                              Model model) {
  switch (mode) {
    case AlphaMode::kExact:
      return Exact(h, model);
    case AlphaMode::kLowerBound:
      return LowerBound(h, model);
    case AlphaMode::kCustom:
      break;
  }
  throw DomainError("custom alpha needs an explicit value");
}

CompSetOutcome CompSetSO(const EntropyTable& h, const AlphaChoice& alpha,
                         const CompSetOptions& options) {
  const AlphaFunction f(h, alpha.value);
  const int n = h.num_users();
  CompSetOutcome out;
  out.rates = RateVector(n, h.All());
  out.rates[0] = f(Subset::Singleton(0));
  for (int i = 1; i < n; ++i) out.rates[i] = alpha.value - h(h.All());
  if (options.observer) options.observer(0, out.rates);

  for (int i = 1; i < n; ++i) {
    const SfmResult m = MinimizeOverPrefix(f, out.rates, i, options.exec);
    out.candidates += m.candidates;
    if (options.early_exit && m.nonsingleton_proper_minimizer) {
      out.complementary_subset = m.nonsingleton_proper_minimizer;
      out.trigger_user = i;
      return out;
    }
    out.rates[i] += m.min_value;
    if (options.observer) options.observer(i, out.rates);
  }
  return out;
}

namespace {

void Require(bool ok, const std::string& what) {
  if (!ok) throw CertificationError("certificate failed: " + what);
}

}  // namespace

Certificate CertifyOutcome(const EntropyTable& h, const AlphaChoice& alpha,
                           const CompSetOutcome& outcome) {
  const GroundSet& users = h.users();
  const Subset all = h.All();
  const MinSumRateResult global = MinSumRate(h, all, alpha.model);
  std::ostringstream text;
  Certificate cert;
  cert.experimental = alpha.mode == AlphaMode::kCustom;

  text << "model " << ToString(alpha.model) << ", alpha " << ToString(alpha.mode)
       << " = " << ToString(alpha.value) << "\n";
  text << "R(V) = " << ToString(global.value) << " (partition "
       << Format(users, global.maximizing_partition) << ")\n";

  if (outcome.found()) {
    const Subset x = *outcome.complementary_subset;
    const bool nonsingleton_proper = x.size() >= 2 && x != all;
    const Rational local = MinSumRate(h, x, alpha.model).value;
    const Rational lhs = h(all) - h(x) + local;
    const bool complementary = nonsingleton_proper && lhs <= global.value;
    text << "subset " << users.Format(x) << " found at user "
         << users.label(outcome.trigger_user) << "\n";
    text << "H(V) - H(X) + R(X) = " << ToString(h(all)) << " - "
         << ToString(h(x)) << " + " << ToString(local) << " = "
         << ToString(lhs) << " <= R(V) = " << ToString(global.value) << ": "
         << (complementary ? "yes" : "NO") << "\n";
    if (cert.experimental) {
      text << "experimental alpha: result reported, not guaranteed\n";
    } else {
      Require(nonsingleton_proper, "returned subset is not non-singleton proper");
      Require(complementary, users.Format(x) + " is not complementary");
      if (alpha.mode == AlphaMode::kExact) {
        Require(DilworthTight(h, alpha.value, x),
                "f_alpha differs from its Dilworth truncation at the subset");
        text << "f_alpha(X) equals its Dilworth truncation\n";
      }
      text << "certified complementary\n";
    }
    cert.text = text.str();
    return cert;
  }

  const RateVector& r = outcome.rates;
  const SwCheck sw = CheckSwAchievable(h, all, r);
  text << "no subset; finished rates (";
  for (int i = 0; i < h.num_users(); ++i) {
    text << (i ? "," : "") << ToString(r[i]);
  }
  text << "), sum " << ToString(r.Total()) << ", SW "
       << (sw ? "feasible" : "VIOLATED at " + users.Format(*sw.violating))
       << "\n";
  if (cert.experimental) {
    text << "experimental alpha: result reported, not guaranteed\n";
    cert.text = text.str();
    return cert;
  }
  Require(alpha.value == global.value,
          "no subset returned but alpha " + ToString(alpha.value) +
              " differs from R(V) " + ToString(global.value));
  Require(r.Total() == alpha.value, "finished rates do not sum to alpha");
  Require(sw.achievable, "finished rates violate SW constraints");
  if (alpha.model == Model::kNonAsymptotic && h.AllIntegral()) {
    Require(r.AllIntegral(), "finished non-asymptotic rates are not integral");
  }
  text << "alpha = R(V) = " << ToString(global.value) << "; ";
  if (h.num_users() <= kExhaustiveCertifyLimit) {
    const auto subsets = EnumerateComplementary(h, alpha.model);
    Require(subsets.empty(), "a complementary subset exists but none returned");
    text << "no complementary subset exists (exhaustive check)\n";
  } else {
    text << "no complementary subset exists (exhaustive check skipped above "
         << kExhaustiveCertifyLimit << " users)\n";
  }
  cert.text = text.str();
  return cert;
}

}  // namespace somni
