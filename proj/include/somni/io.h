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

// JSON documents: source descriptions, stage plans, simulation transcripts.
// Rationals are written as "p/q" strings (plain "p" when integral).
//
// Source description:
//   {"model": "packet", "users": ["1", ...],
//    "packets": {"1": ["a", "b"], ...}, "universe": [...]}      (universe optional)
//   {"model": "table", "users": [...],
//    "entropy": {"": "0", "1": "2", "1,2": "3", ...}}           (every subset)
//   {"model": "linear", "users": [...], "field": 7, "dimension": 3,
//    "rows": {"1": [[1, 0, 2]], ...}}
// Table keys list user labels in any order, comma separated, optionally in
// brackets. A document with "entropy" and no "model" is a table.

#ifndef SOMNI_IO_H_
#define SOMNI_IO_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "somni/core.h"
#include "somni/multistage.h"
#include "somni/rlnc.h"
#include "somni/sources.h"

namespace somni {

using Json = nlohmann::ordered_json;

// Throws FormatError (with line and column for syntax errors).
std::string ReadFile(const std::filesystem::path& path);
Json ParseJson(std::string_view text);

SourceModel SourceFromJson(const Json& doc);
SourceModel ParseSource(std::string_view text);
SourceModel LoadSource(const std::filesystem::path& path);

// The entropy table of any source document without the polymatroid check
// applied to table sources.
struct RawEntropyTable {
  GroundSet users;
  std::vector<Rational> values;
};
RawEntropyTable RawTableFromJson(const Json& doc);

Json SourceToJson(const PacketSource& source);

Json PlanToJson(const StagePlan& plan);
StagePlan PlanFromJson(const Json& doc);

// One JSON object per line: a "broadcast" record per coding row, then one
// "summary" record with per-user decode flags.
std::string TranscriptToJsonLines(const GroundSet& users,
                                  const SimulationResult& result);

}  // namespace somni

#endif  // SOMNI_IO_H_
