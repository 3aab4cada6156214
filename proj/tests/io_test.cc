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

#include "somni/io.h"

#include "gtest/gtest.h"
#include "oracle.h"
#include "somni/errors.h"

namespace somni {
namespace {

using testing::S;

std::string ErrorOf(std::string_view text) {
  try {
    ParseSource(text);
  } catch (const FormatError& e) {
    return e.what();
  } catch (const DomainError& e) {
    return std::string("domain: ") + e.what();
  }
  return "";
}

TEST(SourceJsonTest, PacketSource) {
  const SourceModel src = ParseSource(R"({
    "model": "packet", "users": ["1", "2", 3],
    "packets": {"1": ["a", "b"], "2": ["b", 7], "3": []}
  })");
  ASSERT_TRUE(std::holds_alternative<PacketSource>(src));
  EXPECT_EQ(Entropy(src, S({1, 2, 3})), Rational(3));
  EXPECT_EQ(Entropy(src, S({3})), Rational(0));
  EXPECT_EQ(Users(src).label(2), "3");
}

TEST(SourceJsonTest, TableSourceWithVariousKeys) {
  const SourceModel src = ParseSource(R"({
    "users": ["x", "y"],
    "entropy": {"": "0", "[x]": "1/2", "y": 1, "[y, x]": "3/2"}
  })");
  ASSERT_TRUE(std::holds_alternative<TableSource>(src));
  EXPECT_EQ(Entropy(src, S({1})), Rational(1, 2));
  EXPECT_EQ(Entropy(src, S({1, 2})), Rational(3, 2));
}

TEST(SourceJsonTest, LinearSource) {
  const SourceModel src = ParseSource(R"({
    "model": "linear", "field": 5, "dimension": 2, "users": ["1", "2"],
    "rows": {"1": [[1, 0]], "2": [[1, 1], [2, 2]]}
  })");
  ASSERT_TRUE(std::holds_alternative<LinearSource>(src));
  EXPECT_EQ(Entropy(src, S({2})), Rational(1));
  EXPECT_EQ(Entropy(src, S({1, 2})), Rational(2));
}

TEST(SourceJsonTest, SyntaxErrorsCarryLineAndColumn) {
  const std::string msg = ErrorOf("{\n  \"model\": \"packet\",\n  \"users\": [1 2]\n}");
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
}

TEST(SourceJsonTest, SemanticErrorsNameTheLocation) {
  EXPECT_NE(ErrorOf(R"({"model": "packet", "users": ["1", "2"],
                        "packets": {"9": ["a"]}})").find("/packets/9"),
            std::string::npos);
  EXPECT_NE(ErrorOf(R"({"users": ["1", "2"], "entropy": {"": 0, "1": 1, "2": 1}})")
                .find("missing entry"),
            std::string::npos);
  EXPECT_NE(ErrorOf(R"({"users": ["1", "2"],
                        "entropy": {"": 0, "1": 2, "2": 1, "1,2": 1}})").find("/entropy"),
            std::string::npos);
  EXPECT_NE(ErrorOf(R"({"model": "quantum"})").find("unknown model"),
            std::string::npos);
  EXPECT_NE(ErrorOf(R"([1, 2])").find("expected an object"), std::string::npos);
}

TEST(SourceJsonTest, RawTableSkipsPolymatroidCheck) {
  const RawEntropyTable raw = RawTableFromJson(ParseJson(R"({
    "users": ["1", "2"], "entropy": {"": 0, "1": 2, "2": 1, "1,2": 1}
  })"));
  EXPECT_EQ(raw.values[3], Rational(1));
  EXPECT_FALSE(ValidatePolymatroid(2, raw.values).valid());
}

TEST(PlanJsonTest, RoundTrip) {
  const StagePlan plan =
      PlanMultistage(testing::FiveUser(), Model::kAsymptotic, 5).plan;
  const Json doc = PlanToJson(plan);
  EXPECT_EQ(doc["min_sum_rate"], "13/2");
  EXPECT_EQ(doc["stages"][0]["target"], Json::array({"1", "2"}));
  const StagePlan back = PlanFromJson(ParseJson(doc.dump()));
  EXPECT_EQ(back.users, plan.users);
  EXPECT_EQ(back.model, plan.model);
  EXPECT_EQ(back.chunk_factor, plan.chunk_factor);
  EXPECT_EQ(back.field, plan.field);
  EXPECT_EQ(back.seed, 5u);
  EXPECT_EQ(back.min_sum_rate, plan.min_sum_rate);
  EXPECT_EQ(back.total_rates, plan.total_rates);
  ASSERT_EQ(back.stages.size(), plan.stages.size());
  for (std::size_t k = 0; k < plan.stages.size(); ++k) {
    EXPECT_EQ(back.stages[k].target, plan.stages[k].target);
    EXPECT_EQ(back.stages[k].rates.values().size(), 5u);
    for (int u = 0; u < 5; ++u) {
      EXPECT_EQ(back.stages[k].rates.values()[u], plan.stages[k].rates.values()[u]);
    }
  }
}

TEST(PlanJsonTest, RejectsBadPlans) {
  auto parse = [](const char* text) { return PlanFromJson(ParseJson(text)); };
  EXPECT_THROW(parse(R"({"users": ["1", "2"], "model": "asymptotic",
      "chunk_factor": 1, "field": 4, "stages": []})"), FormatError);
  EXPECT_THROW(parse(R"({"users": ["1", "2"], "model": "asymptotic",
      "chunk_factor": 1, "field": 5,
      "stages": [{"target": ["1"], "rates": {"2": "1"}}]})"), FormatError);
  EXPECT_THROW(parse(R"({"users": ["1", "2"], "model": "asymptotic",
      "chunk_factor": 1, "field": 5,
      "stages": [{"target": ["1", "2"], "rates": {"2": "-1"}}]})"), FormatError);
}

TEST(TranscriptJsonTest, OneRecordPerBroadcastPlusSummary) {
  const PacketSource src = testing::FiveUser();
  const StagePlan plan = PlanMultistage(src, Model::kNonAsymptotic, 0).plan;
  const SimulationResult result = ExecutePlan(src, plan, 0);
  const std::string text = TranscriptToJsonLines(src.users(), result);
  std::vector<Json> records;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t end = text.find('\n', start);
    records.push_back(Json::parse(text.substr(start, end - start)));
    start = end + 1;
  }
  ASSERT_EQ(records.size(), result.transcript.size() + 1);
  EXPECT_EQ(records.front()["type"], "broadcast");
  EXPECT_EQ(records.front()["q"], 53);
  EXPECT_EQ(records.back()["type"], "summary");
  EXPECT_EQ(records.back()["all_decoded"], true);
  EXPECT_EQ(records.back()["ranks"]["3"], 10);
}

}  // namespace
}  // namespace somni
