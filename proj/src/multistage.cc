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

#include "somni/multistage.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "somni/errors.h"
#include "somni/kernels.h"
#include "somni/rlnc.h"

namespace somni {
namespace {

// Concatenated original labels plus one prime per merge depth, e.g. 12' or
// 125''. Labels longer than one character are joined with '+'.
std::string MergedLabel(const GroundSet& original, Subset members, int depth) {
  bool short_labels = true;
  members.ForEachMember([&](int i) {
    short_labels = short_labels && original.label(i).size() == 1;
  });
  std::string out;
  members.ForEachMember([&](int i) {
    if (!out.empty() && !short_labels) out += "+";
    out += original.label(i);
  });
  return out + std::string(depth, '\'');
}

std::vector<Row> Basis(const PrimeField& field, int dimension,
                       std::span<const Row> rows) {
  SpanBasis basis(field, dimension);
  for (const Row& r : rows) basis.Insert(r);
  return basis.rows();
}

}  // namespace

MergedSystem MergedSystem::Initial(const PacketSource& packets,
                                   int chunk_factor, PrimeField field) {
  std::vector<Subset> label_map;
  for (int i = 0; i < packets.users().size(); ++i) {
    label_map.push_back(Subset::Singleton(i));
  }
  return MergedSystem{packets.users(), packets.users(),
                      LinearSource::Lift(packets, chunk_factor, field),
                      std::move(label_map), 0};
}

MergedSystem MergeSuperUser(const MergedSystem& system, Subset x,
                            std::span<const Transmission> transmissions,
                            Model model) {
  const int n = system.users.size();
  if (!system.users.Contains(x) || x.size() < 2 || x == system.users.All()) {
    throw DomainError("merge refused: " + system.users.Format(x) +
                      " is not a non-singleton proper subset");
  }
  const EntropyTable table = kernels::BuildEntropyTable(system.source);
  if (!IsComplementary(table, x, model)) {
    throw DomainError("merge refused: " + system.users.Format(x) +
                      " is not complementary");
  }
  const LinearSource& src = system.source;
  for (const auto& t : transmissions) {
    if (!x.contains(t.sender)) {
      throw DomainError("merge refused: transmission from outside the subset");
    }
  }

  const int super_pos = x.Lowest();
  std::vector<Subset> label_map;
  std::vector<std::vector<Row>> observations;
  for (int k = 0; k < n; ++k) {
    if (x.contains(k) && k != super_pos) continue;
    std::vector<Row> rows;
    if (k == super_pos) {
      Subset merged;
      x.ForEachMember([&](int u) {
        merged |= system.label_map[u];
        rows.insert(rows.end(), src.rows_of(u).begin(), src.rows_of(u).end());
      });
      label_map.push_back(merged);
    } else {
      rows = src.rows_of(k);
      for (const auto& t : transmissions) rows.push_back(t.row);
      label_map.push_back(system.label_map[k]);
    }
    observations.push_back(Basis(src.field(), src.dimension(), rows));
  }

  const int depth = system.depth + 1;
  std::vector<std::string> labels;
  for (Subset block : label_map) {
    labels.push_back(MergedLabel(system.original, block, depth));
  }
  GroundSet users(std::move(labels));
  return MergedSystem{
      system.original, users,
      LinearSource(users, src.field(), src.dimension(), std::move(observations)),
      std::move(label_map), depth};
}

namespace {

// Some stage rate is not a whole number of chunks; `factor` is its
// denominator in chunk units.
struct NeedFinerChunks {
  std::int64_t factor;
};

// A coding draw fell short of the generic rank.
struct RankDeficiency {};

std::vector<Transmission> Synthesize(const MergedSystem& sys, Subset x,
                                     const RateVector& rates,
                                     std::mt19937_64& rng) {
  std::vector<Transmission> out;
  const LinearSource& src = sys.source;
  x.ForEachMember([&](int u) {
    const Rational r = rates[u];
    if (!IsIntegral(r)) throw NeedFinerChunks{r.denominator()};
    for (std::int64_t k = 0; k < r.numerator(); ++k) {
      out.push_back({u, RandomCombination(src.field(), src.dimension(),
                                          src.rows_of(u), rng)});
    }
  });
  return out;
}

bool ReachesLocalOmniscience(const MergedSystem& sys, Subset x,
                             std::span<const Transmission> transmissions) {
  const LinearSource& src = sys.source;
  const int needed = src.RankOf(x);
  bool ok = true;
  x.ForEachMember([&](int u) {
    SpanBasis knowledge(src.field(), src.dimension());
    for (const Row& r : src.rows_of(u)) knowledge.Insert(r);
    for (const auto& t : transmissions) knowledge.Insert(t.row);
    ok = ok && knowledge.rank() == needed;
  });
  return ok;
}

// Stage rates of current users attributed to the lowest original member.
RateVector ToOriginal(const MergedSystem& sys, const RateVector& rates,
                      Subset x, int chunk_factor) {
  const int n = sys.original.size();
  Subset target;
  x.ForEachMember([&](int u) { target |= sys.label_map[u]; });
  RateVector out(n, target);
  x.ForEachMember([&](int u) {
    out[sys.label_map[u].Lowest()] =
        rates[u] / static_cast<std::int64_t>(chunk_factor);
  });
  return out;
}

struct AttemptOutput {
  std::vector<Stage> stages;
  std::vector<StageTrace> trace;
};

AttemptOutput PlanOnce(const PacketSource& source, Model model, int chunks,
                       PrimeField field, std::mt19937_64& rng,
                       std::mt19937_64& reference_rng) {
  AttemptOutput out;
  MergedSystem sys = MergedSystem::Initial(source, chunks, field);
  while (true) {
    const EntropyTable table = kernels::BuildEntropyTable(sys.source);
    AlphaChoice alpha = AlphaChoice::LowerBound(table, model);
    CompSetOutcome outcome = CompSetSO(table, alpha);
    Certificate cert;
    try {
      cert = CertifyOutcome(table, alpha, outcome);
    } catch (const CertificationError&) {
      alpha = AlphaChoice::Exact(table, model);
      outcome = CompSetSO(table, alpha);
      cert = CertifyOutcome(table, alpha, outcome);
    }

    if (!outcome.found()) {
      const Subset all = sys.users.All();
      for (int u = 0; u < sys.users.size(); ++u) {
        if (!IsIntegral(outcome.rates[u])) {
          throw NeedFinerChunks{outcome.rates[u].denominator()};
        }
      }
      // R(V) = 0: the previous stage already left every user omniscient.
      if (outcome.rates.Total() == Rational(0) && !out.stages.empty()) {
        Stage& last = out.stages.back();
        last.target = sys.original.All();
        const auto values = last.rates.values();
        last.rates = RateVector(
            last.target, std::vector<Rational>(values.begin(), values.end()));
        out.trace.back().certificate +=
            "every user holds H(V) after this stage: R(V) = 0\n";
        return out;
      }
      out.stages.push_back({sys.original.All(),
                            ToOriginal(sys, outcome.rates, all, chunks)});
      out.trace.push_back({sys.users, sys.label_map, all, table, outcome.rates,
                           alpha.value, alpha.mode, cert.text});
      return out;
    }

    const Subset x = *outcome.complementary_subset;
    const EntropyTable local = table.Restrict(x);
    const RateVector local_rates = OptimalRateVector(local, model);
    RateVector rates(sys.users.size(), x);
    for (int k = 0; k < local.num_users(); ++k) {
      rates[Embed(x, Subset::Singleton(k)).Lowest()] = local_rates[k];
    }
    const Rational local_rate = local_rates.Total();

    const auto sent = Synthesize(sys, x, rates, rng);
    if (!ReachesLocalOmniscience(sys, x, sent)) throw RankDeficiency{};
    MergedSystem next = MergeSuperUser(sys, x, sent, model);
    // An independent draw must give the same merged entropies; otherwise one
    // of them is rank deficient.
    const auto reference = Synthesize(sys, x, rates, reference_rng);
    const MergedSystem check = MergeSuperUser(sys, x, reference, model);
    if (kernels::EntropyValues(next.source) !=
        kernels::EntropyValues(check.source)) {
      throw RankDeficiency{};
    }

    out.stages.push_back({Subset(), ToOriginal(sys, rates, x, chunks)});
    out.stages.back().target = out.stages.back().rates.domain();
    out.trace.push_back({sys.users, sys.label_map, x, local, local_rates,
                         local_rate, alpha.mode, cert.text});
    sys = std::move(next);
  }
}

}  // namespace

PlanResult PlanMultistage(const PacketSource& source, Model model,
                          std::uint64_t seed, const PlanOptions& options) {
  const EntropyTable original = kernels::BuildEntropyTable(source);
  const Subset all = original.All();
  const MinSumRateResult global = MinSumRate(original, all, model);

  constexpr int kMaxChunkFactor = 1 << 12;
  int chunks = model == Model::kAsymptotic
                   ? static_cast<int>(global.value.denominator())
                   : 1;
  for (int attempt = 0; attempt < options.max_attempts;) {
    const FieldSpec spec = ChooseField(chunks, original(all), original.num_users());
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(attempt)};
    std::mt19937_64 rng(seq);
    std::mt19937_64 reference_rng(rng());
    AttemptOutput run;
    try {
      run = PlanOnce(source, model, chunks, PrimeField(spec.q), rng,
                     reference_rng);
    } catch (const NeedFinerChunks& e) {
      if (model == Model::kNonAsymptotic || chunks * e.factor > kMaxChunkFactor) {
        throw CertificationError("stage rates need an unsupported chunk factor");
      }
      chunks *= static_cast<int>(e.factor);
      continue;
    } catch (const RankDeficiency&) {
      ++attempt;
      continue;
    }

    RateVector total(original.num_users(), all);
    for (const Stage& s : run.stages) total += s.rates;
    if (total.Total() != global.value || !CheckSwAchievable(original, all, total)) {
      throw CertificationError("stage rates total " + ToString(total.Total()) +
                               ", expected R(V) = " + ToString(global.value));
    }
    PlanResult result{
        StagePlan{source.users(), model, chunks, spec.q, seed, global.value,
                  std::move(run.stages), std::move(total)},
        std::move(run.trace), attempt + 1};
    return result;
  }
  throw CertificationError("no full-rank coding draw after " +
                           std::to_string(options.max_attempts) + " attempts");
}

}  // namespace somni
