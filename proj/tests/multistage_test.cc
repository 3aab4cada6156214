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

#include <random>

#include "gtest/gtest.h"
#include "oracle.h"
#include "somni/errors.h"
#include "somni/kernels.h"

namespace somni {
namespace {

using testing::S;
namespace oracle = testing::oracle;

// The five-user source after user 1 broadcasts 4 chunks (2 packets) to {1,2}.
MergedSystem AfterFirstStage() {
  const MergedSystem sys =
      MergedSystem::Initial(testing::FiveUser(), 2, PrimeField(101));
  std::mt19937_64 rng(1);
  std::vector<Transmission> sent;
  for (int k = 0; k < 4; ++k) {
    sent.push_back({0, RandomCombination(sys.source.field(), sys.source.dimension(),
                                         sys.source.rows_of(0), rng)});
  }
  return MergeSuperUser(sys, S({1, 2}), sent, Model::kAsymptotic);
}

TEST(MergeTest, FiveUserFirstStage) {
  const MergedSystem next = AfterFirstStage();
  EXPECT_EQ(next.users.labels(),
            (std::vector<std::string>{"12'", "3'", "4'", "5'"}));
  EXPECT_EQ(next.label_map, (std::vector<Subset>{S({1, 2}), S({3}), S({4}), S({5})}));
  const EntropyTable h = kernels::BuildEntropyTable(next.source);
  EXPECT_EQ(h(S({1})), Rational(16));
  EXPECT_EQ(h(h.All()), Rational(20));
  // Outsiders overheard the 4 coded chunks.
  EXPECT_EQ(h(S({2})), Rational(12));
  const CompSetOutcome out =
      CompSetSO(h, AlphaChoice::LowerBound(h, Model::kAsymptotic));
  ASSERT_TRUE(out.found());
  EXPECT_EQ(*out.complementary_subset, S({1, 4}));
  EXPECT_EQ(next.users.Format(*out.complementary_subset), "{12',5'}");
}

TEST(MergeTest, RefusesSingletonsAndNonComplementarySets) {
  const MergedSystem sys =
      MergedSystem::Initial(testing::FiveUser(), 1, PrimeField(53));
  EXPECT_THROW(MergeSuperUser(sys, S({2}), {}, Model::kAsymptotic), DomainError);
  EXPECT_THROW(MergeSuperUser(sys, Subset::FirstN(5), {}, Model::kAsymptotic),
               DomainError);
  EXPECT_THROW(MergeSuperUser(sys, S({1, 4}), {}, Model::kAsymptotic), DomainError);
  const std::vector<Transmission> outsider{{2, Row(10, 0)}};
  EXPECT_THROW(MergeSuperUser(sys, S({1, 2}), outsider, Model::kAsymptotic),
               DomainError);
}

TEST(PlanTest, FiveUserAsymptotic) {
  const PlanResult result = PlanMultistage(testing::FiveUser(), Model::kAsymptotic, 0);
  const StagePlan& plan = result.plan;
  ASSERT_EQ(plan.stages.size(), 3u);
  EXPECT_EQ(plan.stages[0].target, S({1, 2}));
  EXPECT_EQ(plan.stages[1].target, S({1, 2, 5}));
  EXPECT_EQ(plan.stages[2].target, Subset::FirstN(5));
  EXPECT_EQ(plan.total_rates.Total(), Rational(13, 2));
  EXPECT_EQ(plan.min_sum_rate, Rational(13, 2));
  EXPECT_EQ(plan.chunk_factor, 2);
  EXPECT_EQ(plan.field, 101u);
  EXPECT_EQ(plan.total_rates,
            testing::Rates({Rational(9, 2), Rational(0), Rational(1, 2),
                            Rational(1, 2), Rational(1)}));
  EXPECT_EQ(result.trace.size(), 3u);
}

TEST(PlanTest, FiveUserNonAsymptotic) {
  const PlanResult result =
      PlanMultistage(testing::FiveUser(), Model::kNonAsymptotic, 0);
  const StagePlan& plan = result.plan;
  EXPECT_EQ(plan.total_rates.Total(), Rational(7));
  EXPECT_TRUE(plan.total_rates.AllIntegral());
  ASSERT_EQ(plan.stages.size(), 3u);
  EXPECT_EQ(plan.stages[0].target, S({1, 2}));
  EXPECT_EQ(plan.stages[1].target, S({1, 2, 4}));
  EXPECT_EQ(plan.stages[2].target, Subset::FirstN(5));
  EXPECT_EQ(plan.field, 53u);
}

TEST(PlanTest, PairwiseSingleStage) {
  const PlanResult result = PlanMultistage(testing::Pairwise(), Model::kAsymptotic, 0);
  ASSERT_EQ(result.plan.stages.size(), 1u);
  EXPECT_EQ(result.plan.stages[0].target, Subset::FirstN(3));
  EXPECT_EQ(result.plan.total_rates.Total(), Rational(3, 2));
  EXPECT_EQ(result.plan.chunk_factor, 2);
}

TEST(PlanTest, IdenticalUsersNeedNothing) {
  const PacketSource src = testing::MakePackets({{"a", "b"}, {"a", "b"}});
  const PlanResult result = PlanMultistage(src, Model::kAsymptotic, 0);
  ASSERT_EQ(result.plan.stages.size(), 1u);
  EXPECT_EQ(result.plan.total_rates.Total(), Rational(0));
}

// Each stage's local rates (chunk units) satisfy local SW on the stage's
// entropy table and sum to its minimum sum-rate.
TEST(PlanTest, RandomSourcesTotalMinimumAndStageRatesAreLocallyFeasible) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 3 + trial % 3;
    const auto p = testing::RandomPackets(rng, n, 8);
    const PacketSource src = testing::MakePackets(p);
    for (Model model : {Model::kAsymptotic, Model::kNonAsymptotic}) {
      const PlanResult result = PlanMultistage(src, model, trial);
      EXPECT_EQ(result.plan.total_rates.Total(),
                oracle::MinSumRate(oracle::EntropyOf(p), src.users().All(),
                                   model == Model::kAsymptotic));
      EXPECT_EQ(result.plan.stages.back().target, src.users().All());
      for (const StageTrace& t : result.trace) {
        const EntropyTable local = t.entropy;
        const auto lh = [&](Subset x) { return local(x); };
        EXPECT_TRUE(oracle::SwFeasible(lh, local.All(), t.local_rates.values()));
        EXPECT_EQ(t.local_rates.Total(),
                  oracle::MinSumRate(lh, local.All(), model == Model::kAsymptotic));
      }
    }
  }
}

}  // namespace
}  // namespace somni
