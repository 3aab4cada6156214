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

// Random linear network coding over GF(q) executing a stage plan on a packet
// source. Every packet is split into L chunks; column p * L + c of a coding
// row is chunk c of packet p.

#ifndef SOMNI_RLNC_H_
#define SOMNI_RLNC_H_

#include <cstdint>
#include <vector>

#include "somni/core.h"
#include "somni/gf.h"
#include "somni/sources.h"

namespace somni {

struct StagePlan;

struct FieldSpec {
  std::uint32_t q = 0;
  int chunk_factor = 1;
  Rational entropy;  // H(V) in packets
  int num_users = 0;
};

// Smallest prime q > L * H(V) * |V|. Throws DomainError unless L * H(V) is
// integral.
FieldSpec ChooseField(int chunk_factor, const Rational& entropy, int num_users);

// What user `user` can reconstruct at the start: one unit row per chunk of
// every packet it holds.
SpanBasis InitialKnowledge(const PacketSource& source, int user,
                           int chunk_factor, PrimeField field);

// True iff the knowledge has rank >= L * H(target) and spans every chunk of
// every packet held in `target`.
bool DecodeCheck(const PacketSource& source, const SpanBasis& knowledge,
                 Subset target, int chunk_factor);

struct Broadcast {
  int run = 0;
  int stage = 0;
  int attempt = 0;
  int sender = 0;
  Row coding_row;
};

struct StageReport {
  int stage = 0;
  Subset target;
  int attempts = 0;
  bool target_decoded = false;
};

struct SimulationOptions {
  // A stage whose target does not reach local omniscience is redrawn with
  // fresh coefficients, up to this many attempts in total.
  int max_stage_attempts = 3;
  // A run that leaves some user short of H(V) restarts from the initial
  // knowledge, since a later stage cannot repair rows overheard earlier.
  int max_runs = 3;
};

struct SimulationResult {
  std::uint32_t q = 0;
  int chunk_factor = 1;
  int required_rank = 0;  // L * H(V)
  // Every broadcast drawn, including those of discarded attempts.
  std::vector<Broadcast> transcript;
  int runs = 0;
  // Reports, ranks and decode flags of the final run.
  std::vector<StageReport> stages;
  std::vector<int> ranks;
  std::vector<bool> decoded;

  bool all_decoded() const;
  // Stage attempts that failed and were redrawn, in the final run.
  int retries() const;
};

// Runs the plan. Within a stage every sender codes over what it knew when the
// stage began; each user with rate r sends r * L rows. Throws FormatError if
// the plan does not match the source or some r * L is not integral.
SimulationResult ExecutePlan(const PacketSource& source, const StagePlan& plan,
                             std::uint64_t seed,
                             const SimulationOptions& options = {});

}  // namespace somni

#endif  // SOMNI_RLNC_H_
