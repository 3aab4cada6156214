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

// Multi-stage successive omniscience. Each stage finds a complementary subset
// of the current system, lets it reach local omniscience with an optimal local
// rate vector, and merges it into one super user. Users outside the subset
// keep everything they overheard. The loop ends with a global stage once no
// complementary subset is left.

#ifndef SOMNI_MULTISTAGE_H_
#define SOMNI_MULTISTAGE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "somni/compsetso.h"
#include "somni/core.h"
#include "somni/gf.h"
#include "somni/omniscience.h"
#include "somni/sources.h"

namespace somni {

// A system derived from the original users by merging. Entropy is measured
// in chunks of the lifted packet source.
struct MergedSystem {
  GroundSet original;
  GroundSet users;
  LinearSource source;
  // label_map[k] = original users represented by current user k. The blocks
  // partition the original ground set.
  std::vector<Subset> label_map;
  int depth = 0;

  static MergedSystem Initial(const PacketSource& packets, int chunk_factor,
                              PrimeField field);
};

// A coding row broadcast by current user `sender`.
struct Transmission {
  int sender = 0;
  Row row;
};

// Merges x (current indices) into one super user placed at the position of
// its lowest member. The super user observes the stacked rows of x; every
// other user adds all transmissions to its observations.
// Refuses (DomainError) unless x has at least two users, is a proper subset,
// and passes the complementarity test of `model` on the current system.
MergedSystem MergeSuperUser(const MergedSystem& system, Subset x,
                            std::span<const Transmission> transmissions,
                            Model model);

struct Stage {
  Subset target;      // original users
  RateVector rates;   // original users, in packets; zero outside target
};

struct StagePlan {
  GroundSet users;
  Model model = Model::kAsymptotic;
  int chunk_factor = 1;
  std::uint32_t field = 2;
  std::uint64_t seed = 0;
  Rational min_sum_rate;
  std::vector<Stage> stages;
  RateVector total_rates;
};

// Planner diagnostics for one stage, in the current system's indices and
// chunk units.
struct StageTrace {
  GroundSet users;
  std::vector<Subset> label_map;
  Subset local_target;
  EntropyTable entropy;
  RateVector local_rates;
  Rational local_min_sum_rate;
  AlphaMode alpha_mode;
  std::string certificate;
};

struct PlanOptions {
  // Fresh coefficient draws tried before giving up on rank deficiencies.
  int max_attempts = 8;
};

struct PlanResult {
  StagePlan plan;
  std::vector<StageTrace> trace;
  int attempts = 0;
};

// Plans multi-stage omniscience for a packet source. Throws
// CertificationError if the stage rates do not add up to R(V).
PlanResult PlanMultistage(const PacketSource& source, Model model,
                          std::uint64_t seed, const PlanOptions& options = {});

}  // namespace somni

#endif  // SOMNI_MULTISTAGE_H_
