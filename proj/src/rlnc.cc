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

#include "somni/rlnc.h"

#include <algorithm>
#include <random>

#include "somni/errors.h"
#include "somni/multistage.h"

namespace somni {

FieldSpec ChooseField(int chunk_factor, const Rational& entropy,
                      int num_users) {
  if (chunk_factor < 1 || num_users < 1) {
    throw DomainError("chunk factor and user count must be positive");
  }
  const Rational chunks = entropy * static_cast<std::int64_t>(chunk_factor);
  if (!IsIntegral(chunks) || chunks < Rational(0)) {
    throw DomainError("H(V) = " + ToString(entropy) +
                      " is not a whole number of chunks");
  }
  const auto bound = static_cast<std::uint64_t>(chunks.numerator()) *
                     static_cast<std::uint64_t>(num_users);
  return FieldSpec{static_cast<std::uint32_t>(NextPrimeAbove(bound)),
                   chunk_factor, entropy, num_users};
}

SpanBasis InitialKnowledge(const PacketSource& source, int user,
                           int chunk_factor, PrimeField field) {
  const int dim = source.num_packets() * chunk_factor;
  SpanBasis basis(field, dim);
  for (int p : source.packets_of(user)) {
    for (int c = 0; c < chunk_factor; ++c) {
      Row e(dim, 0);
      e[p * chunk_factor + c] = 1;
      basis.Insert(e);
    }
  }
  return basis;
}

bool DecodeCheck(const PacketSource& source, const SpanBasis& knowledge,
                 Subset target, int chunk_factor) {
  const Rational needed =
      source.Entropy(target) * static_cast<std::int64_t>(chunk_factor);
  if (Rational(knowledge.rank()) < needed) return false;
  for (int p : source.PacketsOf(target)) {
    for (int c = 0; c < chunk_factor; ++c) {
      if (!knowledge.ContainsUnit(p * chunk_factor + c)) return false;
    }
  }
  return true;
}

bool SimulationResult::all_decoded() const {
  return std::all_of(decoded.begin(), decoded.end(), [](bool b) { return b; });
}

int SimulationResult::retries() const {
  int n = 0;
  for (const auto& s : stages) n += s.attempts - 1;
  return n;
}

SimulationResult ExecutePlan(const PacketSource& source, const StagePlan& plan,
                             std::uint64_t seed,
                             const SimulationOptions& options) {
  if (plan.users != source.users()) {
    throw FormatError("plan users do not match the source");
  }
  const int n = source.users().size();
  const int chunks = plan.chunk_factor;
  if (chunks < 1) throw FormatError("plan chunk factor must be positive");
  const PrimeField field(plan.field);
  const int dim = source.num_packets() * chunks;

  // Transmission counts per stage and user, in chunks.
  std::vector<std::vector<std::int64_t>> counts;
  for (const Stage& stage : plan.stages) {
    if (stage.rates.num_users() != n) {
      throw FormatError("stage rates do not cover the ground set");
    }
    std::vector<std::int64_t> row(n, 0);
    for (int u = 0; u < n; ++u) {
      const Rational r = stage.rates.values()[u] * static_cast<std::int64_t>(chunks);
      if (!IsIntegral(r) || r < Rational(0)) {
        throw FormatError("rate " + ToString(stage.rates.values()[u]) +
                          " of user " + source.users().label(u) +
                          " is not a whole number of chunks");
      }
      row[u] = r.numerator();
    }
    counts.push_back(std::move(row));
  }

  SimulationResult result;
  result.q = plan.field;
  result.chunk_factor = chunks;
  result.required_rank =
      static_cast<int>(source.Entropy(source.users().All()).numerator()) * chunks;

  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32)};
  std::mt19937_64 rng(seq);
  const int max_attempts = std::max(1, options.max_stage_attempts);
  const int max_runs = std::max(1, options.max_runs);
  const Subset all = source.users().All();

  for (int run = 0; run < max_runs; ++run) {
    result.runs = run + 1;
    result.stages.clear();
    std::vector<SpanBasis> knowledge;
    for (int u = 0; u < n; ++u) {
      knowledge.push_back(InitialKnowledge(source, u, chunks, field));
    }
    for (std::size_t s = 0; s < plan.stages.size(); ++s) {
      const Subset target = plan.stages[s].target;
      StageReport report{static_cast<int>(s), target, 0, false};
      std::vector<SpanBasis> next;
      for (int attempt = 0; attempt < max_attempts; ++attempt) {
        report.attempts = attempt + 1;
        std::vector<Broadcast> sent;
        for (int u = 0; u < n; ++u) {
          for (std::int64_t k = 0; k < counts[s][u]; ++k) {
            Row row = RandomCombination(field, dim, knowledge[u].rows(), rng);
            if (!knowledge[u].Contains(row)) {
              throw CertificationError("coding row outside the sender's span");
            }
            sent.push_back({run, static_cast<int>(s), attempt, u, std::move(row)});
          }
        }
        next = knowledge;
        for (int u = 0; u < n; ++u) {
          for (const auto& b : sent) {
            if (b.sender != u) next[u].Insert(b.coding_row);
          }
        }
        result.transcript.insert(result.transcript.end(),
                                 std::make_move_iterator(sent.begin()),
                                 std::make_move_iterator(sent.end()));
        bool ok = true;
        target.ForEachMember([&](int u) {
          ok = ok && DecodeCheck(source, next[u], target, chunks);
        });
        report.target_decoded = ok;
        if (ok) break;
      }
      knowledge = std::move(next);
      result.stages.push_back(report);
    }

    result.ranks.clear();
    result.decoded.clear();
    for (int u = 0; u < n; ++u) {
      result.ranks.push_back(knowledge[u].rank());
      result.decoded.push_back(DecodeCheck(source, knowledge[u], all, chunks));
    }
    if (result.all_decoded()) break;
  }
  return result;
}

}  // namespace somni
