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

#include <random>

#include "gtest/gtest.h"
#include "oracle.h"
#include "somni/errors.h"
#include "somni/multistage.h"

namespace somni {
namespace {

using testing::S;

RateVector StageRates(Subset target, std::vector<Rational> values) {
  return RateVector(target, std::move(values));
}

// The three non-asymptotic stages, L = 1.
StagePlan ReferenceNonAsymptoticPlan() {
  const GroundSet users = testing::Labels(5);
  const Rational z(0), one(1);
  std::vector<Stage> stages{
      {S({1, 2}), StageRates(S({1, 2}), {Rational(2), z, z, z, z})},
      {S({1, 2, 4}), StageRates(S({1, 2, 4}), {Rational(3), z, z, one, z})},
      {Subset::FirstN(5), StageRates(Subset::FirstN(5), {z, z, one, z, z})}};
  RateVector total(5, Subset::FirstN(5));
  for (const Stage& s : stages) total += s.rates;
  return StagePlan{users, Model::kNonAsymptotic, 1, 53, 0, Rational(7),
                   std::move(stages), std::move(total)};
}

TEST(ChooseFieldTest, Values) {
  EXPECT_EQ(ChooseField(2, Rational(10), 5).q, 101u);
  EXPECT_EQ(ChooseField(1, Rational(10), 5).q, 53u);
  EXPECT_EQ(ChooseField(1, Rational(3), 3).q, 11u);
  EXPECT_THROW(ChooseField(1, Rational(7, 2), 3), DomainError);
  EXPECT_THROW(ChooseField(0, Rational(3), 3), DomainError);
}

TEST(DecodeCheckTest, TrivialCases) {
  const PacketSource src = testing::MakePackets({{"a", "b"}, {}});
  const PrimeField f(5);
  EXPECT_TRUE(DecodeCheck(src, InitialKnowledge(src, 0, 1, f), src.users().All(), 1));
  EXPECT_FALSE(DecodeCheck(src, InitialKnowledge(src, 1, 1, f), src.users().All(), 1));
}

TEST(DecodeCheckTest, FiveUserPairAfterTwoBroadcasts) {
  const PacketSource src = testing::FiveUser();
  const PrimeField f(53);
  const SpanBasis sender = InitialKnowledge(src, 0, 1, f);
  SpanBasis receiver = InitialKnowledge(src, 1, 1, f);
  std::mt19937_64 rng(4);
  for (int k = 0; k < 2; ++k) {
    receiver.Insert(RandomCombination(f, 10, sender.rows(), rng));
  }
  EXPECT_EQ(receiver.rank(), 8);
  EXPECT_TRUE(DecodeCheck(src, receiver, S({1, 2}), 1));
  EXPECT_FALSE(DecodeCheck(src, receiver, Subset::FirstN(5), 1));
}

TEST(ExecutePlanTest, ReferenceNonAsymptoticStages) {
  const PacketSource src = testing::FiveUser();
  const SimulationResult result = ExecutePlan(src, ReferenceNonAsymptoticPlan(), 0);
  EXPECT_TRUE(result.all_decoded());
  EXPECT_EQ(result.required_rank, 10);
  for (int rank : result.ranks) EXPECT_EQ(rank, 10);
  // Seven rows in the accepted attempt of each stage.
  int accepted = 0;
  for (const Broadcast& b : result.transcript) {
    accepted += b.run == result.runs - 1 &&
                b.attempt == result.stages[b.stage].attempts - 1;
  }
  EXPECT_EQ(accepted, 7);
}

TEST(ExecutePlanTest, PlannedAsymptoticRun) {
  const PacketSource src = testing::FiveUser();
  const StagePlan plan = PlanMultistage(src, Model::kAsymptotic, 0).plan;
  const SimulationResult result = ExecutePlan(src, plan, 0);
  EXPECT_EQ(result.q, 101u);
  EXPECT_EQ(result.required_rank, 20);
  EXPECT_TRUE(result.all_decoded());
  for (const Broadcast& b : result.transcript) EXPECT_EQ(b.coding_row.size(), 20u);
}

TEST(ExecutePlanTest, DeterministicGivenSeed) {
  const PacketSource src = testing::FiveUser();
  const StagePlan plan = ReferenceNonAsymptoticPlan();
  const SimulationResult a = ExecutePlan(src, plan, 42);
  const SimulationResult b = ExecutePlan(src, plan, 42);
  ASSERT_EQ(a.transcript.size(), b.transcript.size());
  for (std::size_t k = 0; k < a.transcript.size(); ++k) {
    EXPECT_EQ(a.transcript[k].coding_row, b.transcript[k].coding_row);
  }
}

TEST(ExecutePlanTest, ZeroRatesLeaveUsersShort) {
  const PacketSource src = testing::FiveUser();
  StagePlan plan = ReferenceNonAsymptoticPlan();
  for (Stage& s : plan.stages) s.rates = RateVector(5, s.target);
  plan.total_rates = RateVector(5, Subset::FirstN(5));
  const SimulationResult result = ExecutePlan(src, plan, 0);
  EXPECT_FALSE(result.all_decoded());
  EXPECT_FALSE(result.decoded[2]);
  EXPECT_TRUE(result.transcript.empty());
  EXPECT_EQ(result.runs, SimulationOptions{}.max_runs);
  // Every failed stage was redrawn up to the limit and reported.
  for (const StageReport& s : result.stages) {
    EXPECT_FALSE(s.target_decoded);
    EXPECT_EQ(s.attempts, SimulationOptions{}.max_stage_attempts);
  }
}

TEST(ExecutePlanTest, IdenticalUsersZeroBroadcasts) {
  const PacketSource src = testing::MakePackets({{"a", "b"}, {"a", "b"}});
  const StagePlan plan = PlanMultistage(src, Model::kAsymptotic, 0).plan;
  const SimulationResult result = ExecutePlan(src, plan, 0);
  EXPECT_TRUE(result.all_decoded());
  EXPECT_TRUE(result.transcript.empty());
}

TEST(ExecutePlanTest, HalvedRatesFailAndSwPredictsIt) {
  const PacketSource src = testing::FiveUser();
  StagePlan plan = PlanMultistage(src, Model::kAsymptotic, 0).plan;
  plan.chunk_factor *= 2;
  RateVector total(5, Subset::FirstN(5));
  for (Stage& s : plan.stages) {
    std::vector<Rational> half(s.rates.values().begin(), s.rates.values().end());
    for (auto& r : half) r /= 2;
    s.rates = RateVector(s.rates.domain(), half);
    total += s.rates;
  }
  plan.total_rates = total;
  const EntropyTable h = testing::TableOf(src);
  EXPECT_FALSE(CheckSwAchievable(h, h.All(), total).achievable);
  const SimulationResult result = ExecutePlan(src, plan, 0);
  EXPECT_FALSE(result.all_decoded());
}

TEST(ExecutePlanTest, RestartsWhenOverheardRowsFallShort) {
  // With this seed the rows user 3 overhears in the first two stages are
  // deficient, and only user 3 sends in the last stage.
  const PacketSource src = testing::FiveUser();
  SimulationOptions single;
  single.max_runs = 1;
  const SimulationResult once = ExecutePlan(src, ReferenceNonAsymptoticPlan(), 17, single);
  EXPECT_FALSE(once.decoded[2]);
  EXPECT_EQ(once.ranks[2], 9);
  const SimulationResult result = ExecutePlan(src, ReferenceNonAsymptoticPlan(), 17);
  EXPECT_TRUE(result.all_decoded());
  EXPECT_GT(result.runs, 1);
}

TEST(ExecutePlanTest, RejectsMismatchedPlans) {
  const PacketSource src = testing::FiveUser();
  StagePlan plan = ReferenceNonAsymptoticPlan();
  plan.stages[0].rates[0] = Rational(1, 2);
  EXPECT_THROW(ExecutePlan(src, plan, 0), FormatError);
  const PacketSource other = testing::Pairwise();
  EXPECT_THROW(ExecutePlan(other, ReferenceNonAsymptoticPlan(), 0), FormatError);
}

}  // namespace
}  // namespace somni
