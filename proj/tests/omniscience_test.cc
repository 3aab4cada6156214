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

#include <random>

#include "gtest/gtest.h"
#include "oracle.h"
#include "somni/errors.h"

namespace somni {
namespace {

using testing::S;
namespace oracle = testing::oracle;

const Subset kAll5 = Subset::FirstN(5);

std::vector<Subset> NonAsymptoticList() {
  return {S({1, 2}),       S({1, 4}),       S({1, 5}),       S({2, 4}),
          S({2, 5}),       S({1, 2, 4}),    S({1, 2, 5}),    S({1, 3, 4}),
          S({1, 3, 5}),    S({1, 4, 5}),    S({2, 3, 4}),    S({2, 3, 5}),
          S({2, 4, 5}),    S({1, 2, 3, 4}), S({1, 2, 3, 5}), S({1, 2, 4, 5}),
          S({1, 3, 4, 5}), S({2, 3, 4, 5})};
}

TEST(MinSumRateTest, FiveUser) {
  const EntropyTable h = testing::TableOf(testing::FiveUser());
  const auto asym = MinSumRate(h, kAll5, Model::kAsymptotic);
  EXPECT_EQ(asym.value, Rational(13, 2));
  EXPECT_EQ(asym.partitions_scanned, 52u);
  EXPECT_TRUE(asym.maximizing_partition.IsValid());
  EXPECT_EQ(MinSumRate(h, kAll5, Model::kNonAsymptotic).value, Rational(7));
  EXPECT_EQ(MinSumRate(h, S({1, 2}), Model::kAsymptotic).value, Rational(2));
}

TEST(MinSumRateTest, ThreeUserSystems) {
  const EntropyTable e1 = testing::TableOf(testing::Pairwise());
  EXPECT_EQ(MinSumRate(e1, e1.All(), Model::kAsymptotic).value, Rational(3, 2));
  EXPECT_EQ(MinSumRate(e1, e1.All(), Model::kNonAsymptotic).value, Rational(2));
  const EntropyTable e2 = testing::TableOf(testing::Disjoint());
  EXPECT_EQ(MinSumRate(e2, e2.All(), Model::kAsymptotic).value, Rational(3));
}

TEST(MinSumRateTest, RejectsSingleton) {
  const EntropyTable h = testing::TableOf(testing::FiveUser());
  EXPECT_THROW(MinSumRate(h, S({2}), Model::kAsymptotic), DomainError);
}

TEST(MinSumRateTest, PartitionBoundPropertyOnRandomSources) {
  // alpha* bounds every partition ratio and the maximizer attains it.
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 3 + trial % 4;
    const auto p = testing::RandomPackets(rng, n, 10);
    const EntropyTable h = testing::TableOf(testing::MakePackets(p));
    const auto result = MinSumRate(h, h.All(), Model::kAsymptotic);
    EXPECT_EQ(result.value, oracle::Raco(oracle::EntropyOf(p), h.All()));
    const Rational hv = h(h.All());
    oracle::EachPartition(h.All(), [&](const std::vector<Subset>& blocks) {
      if (blocks.size() < 2) return;
      Rational sum(0);
      for (Subset c : blocks) sum += hv - h(c);
      EXPECT_LE(sum, result.value * static_cast<std::int64_t>(blocks.size() - 1));
    });
    Rational sum(0);
    for (Subset c : result.maximizing_partition.blocks) sum += hv - h(c);
    EXPECT_EQ(sum, result.value *
                       static_cast<std::int64_t>(result.maximizing_partition.size() - 1));
    EXPECT_EQ(MinSumRate(h, h.All(), Model::kNonAsymptotic).value,
              Ceil(result.value));
  }
}

TEST(SwTest, FiveUserVectors) {
  const EntropyTable h = testing::TableOf(testing::FiveUser());
  const RateVector asym = testing::Rates(
      {Rational(9, 2), Rational(0), Rational(1, 2), Rational(1, 2), Rational(1)});
  const RateVector non = testing::Rates(
      {Rational(5), Rational(0), Rational(1), Rational(1), Rational(0)});
  EXPECT_TRUE(CheckSwAchievable(h, kAll5, asym).achievable);
  EXPECT_TRUE(CheckSwAchievable(h, kAll5, non).achievable);
  const SwCheck zero = CheckSwAchievable(h, kAll5, RateVector(5, kAll5));
  EXPECT_FALSE(zero.achievable);
  ASSERT_TRUE(zero.violating.has_value());
  // The reported set really violates its constraint.
  const Subset c = *zero.violating;
  EXPECT_LT(Rational(0), h(kAll5) - h(kAll5 - c));
}

TEST(ComplementaryTest, FiveUserCases) {
  const EntropyTable h = testing::TableOf(testing::FiveUser());
  EXPECT_TRUE(IsComplementary(h, S({1, 2}), Model::kAsymptotic));
  EXPECT_FALSE(IsComplementary(h, S({1, 4}), Model::kAsymptotic));
  EXPECT_TRUE(IsComplementary(h, S({1, 4}), Model::kNonAsymptotic));
  EXPECT_THROW(IsComplementary(h, S({1}), Model::kAsymptotic), DomainError);
  EXPECT_THROW(IsComplementary(h, kAll5, Model::kAsymptotic), DomainError);
}

TEST(ComplementaryTest, PairwiseHasNone) {
  const EntropyTable h = testing::TableOf(testing::Pairwise());
  for (Subset x : {S({1, 2}), S({1, 3}), S({2, 3})}) {
    EXPECT_FALSE(IsComplementary(h, x, Model::kAsymptotic));
  }
  EXPECT_TRUE(EnumerateComplementaryVerified(h, Model::kAsymptotic).empty());
}

TEST(EnumerateTest, FiveUserLists) {
  const EntropyTable h = testing::TableOf(testing::FiveUser());
  const std::vector<Subset> asym{S({1, 2}), S({1, 5}), S({1, 2, 5}),
                                 S({1, 3, 4, 5})};
  for (auto test : {ComplementarityTest::kSumRate, ComplementarityTest::kDilworth}) {
    EXPECT_EQ(EnumerateComplementary(h, Model::kAsymptotic, test), asym);
    EXPECT_EQ(EnumerateComplementary(h, Model::kNonAsymptotic, test),
              NonAsymptoticList());
  }
  EXPECT_EQ(EnumerateComplementaryVerified(h, Model::kNonAsymptotic),
            NonAsymptoticList());
}

TEST(EnumerateTest, DisjointAllSubsets) {
  const EntropyTable h = testing::TableOf(testing::Disjoint());
  const std::vector<Subset> all{S({1, 2}), S({1, 3}), S({2, 3})};
  EXPECT_EQ(EnumerateComplementaryVerified(h, Model::kAsymptotic), all);
}

TEST(EnumerateTest, BothPathsMatchOracleOnRandomSources) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + trial % 3;
    const auto p = testing::RandomPackets(rng, n, 8);
    const EntropyTable h = testing::TableOf(testing::MakePackets(p));
    const auto oh = oracle::EntropyOf(p);
    for (Model model : {Model::kAsymptotic, Model::kNonAsymptotic}) {
      std::vector<Subset> expected;
      for (Subset x : oracle::SubsetsOf(h.All())) {
        if (x.size() >= 2 && x != h.All() &&
            oracle::Complementary(oh, h.All(), x, model == Model::kAsymptotic)) {
          expected.push_back(x);
        }
      }
      std::sort(expected.begin(), expected.end(), [](Subset a, Subset b) {
        return a.size() != b.size() ? a.size() < b.size() : a.Members() < b.Members();
      });
      EXPECT_EQ(EnumerateComplementaryVerified(h, model), expected);
    }
  }
}

TEST(OptimalRateVectorTest, PairwiseForced) {
  const EntropyTable h = testing::TableOf(testing::Pairwise());
  const RateVector r = OptimalRateVector(h, Model::kAsymptotic);
  EXPECT_EQ(r, testing::Rates({Rational(1, 2), Rational(1, 2), Rational(1, 2)}));
}

TEST(OptimalRateVectorTest, FiveUserBothModels) {
  const EntropyTable h = testing::TableOf(testing::FiveUser());
  const auto oh = oracle::EntropyOf(testing::FiveUserPackets());
  const RateVector asym = OptimalRateVector(h, Model::kAsymptotic);
  EXPECT_EQ(asym.Total(), Rational(13, 2));
  EXPECT_TRUE(oracle::SwFeasible(oh, kAll5, asym.values()));
  const RateVector non = OptimalRateVector(h, Model::kNonAsymptotic);
  EXPECT_EQ(non.Total(), Rational(7));
  EXPECT_TRUE(non.AllIntegral());
  EXPECT_TRUE(oracle::SwFeasible(oh, kAll5, non.values()));
}

TEST(ModelTest, Parse) {
  EXPECT_EQ(ParseModel("asymptotic"), Model::kAsymptotic);
  EXPECT_EQ(ParseModel("non-asymptotic"), Model::kNonAsymptotic);
  EXPECT_THROW(ParseModel("fast"), FormatError);
  EXPECT_STREQ(ToString(Model::kNonAsymptotic), "non-asymptotic");
}

}  // namespace
}  // namespace somni
