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

#include <fstream>
#include <sstream>

#include "somni/errors.h"
#include "somni/kernels.h"

namespace somni {
namespace {

[[noreturn]] void Fail(const std::string& where, const std::string& what) {
  throw FormatError(where + ": " + what);
}

const Json& Field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) Fail(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) Fail(where, std::string("missing \"") + key + "\"");
  return *it;
}

// Labels may be written as strings or integers.
std::string Label(const Json& j, const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<std::int64_t>());
  Fail(where, "expected a string or integer label");
}

Rational RationalOf(const Json& j, const std::string& where) {
  try {
    if (j.is_string()) return ParseRational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  } catch (const FormatError& e) {
    Fail(where, e.what());
  }
  Fail(where, "expected a \"p/q\" string");
}

std::vector<std::string> LabelList(const Json& j, const std::string& where) {
  if (!j.is_array()) Fail(where, "expected an array");
  std::vector<std::string> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    out.push_back(Label(j[k], where + "/" + std::to_string(k)));
  }
  return out;
}

GroundSet UsersOf(const Json& doc, const Json* keyed) {
  std::vector<std::string> labels;
  if (doc.contains("users")) {
    labels = LabelList(doc["users"], "/users");
  } else if (keyed != nullptr && keyed->is_object()) {
    for (const auto& [k, v] : keyed->items()) labels.push_back(k);
  } else {
    Fail("/", "missing \"users\"");
  }
  try {
    return GroundSet(std::move(labels));
  } catch (const DomainError& e) {
    Fail("/users", e.what());
  }
}

// Per-user entries of an object keyed by label, in ground-set order.
std::vector<const Json*> PerUser(const GroundSet& users, const Json& obj,
                                 const std::string& where) {
  if (!obj.is_object()) Fail(where, "expected an object keyed by user");
  std::vector<const Json*> out(users.size(), nullptr);
  for (const auto& [key, value] : obj.items()) {
    auto i = users.Find(key);
    if (!i) Fail(where + "/" + key, "unknown user");
    out[*i] = &value;
  }
  return out;
}

Subset SubsetKey(const GroundSet& users, std::string_view key,
                 const std::string& where) {
  std::string_view s = key;
  auto trim = [](std::string_view v) {
    while (!v.empty() && v.front() == ' ') v.remove_prefix(1);
    while (!v.empty() && v.back() == ' ') v.remove_suffix(1);
    return v;
  };
  s = trim(s);
  if (!s.empty() && s.front() == '[' && s.back() == ']') {
    s = trim(s.substr(1, s.size() - 2));
  }
  Subset out;
  while (!s.empty()) {
    const auto comma = s.find(',');
    std::string_view item = trim(s.substr(0, comma));
    if (item.size() >= 2 && item.front() == '"' && item.back() == '"') {
      item = item.substr(1, item.size() - 2);
    }
    auto i = users.Find(item);
    if (!i) Fail(where, "unknown user \"" + std::string(item) + "\"");
    out |= Subset::Singleton(*i);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

std::string ModelOf(const Json& doc) {
  if (doc.contains("model")) {
    const Json& m = doc["model"];
    if (!m.is_string()) Fail("/model", "expected a string");
    return m.get<std::string>();
  }
  if (doc.contains("entropy")) return "table";
  if (doc.contains("packets")) return "packet";
  Fail("/", "missing \"model\"");
}

std::vector<Rational> TableValues(const GroundSet& users, const Json& entropy) {
  if (!entropy.is_object()) Fail("/entropy", "expected an object");
  const std::size_t total = std::size_t{1} << users.size();
  std::vector<Rational> values(total);
  std::vector<bool> seen(total, false);
  for (const auto& [key, value] : entropy.items()) {
    const std::string where = "/entropy/" + key;
    const Subset x = SubsetKey(users, key, where);
    if (seen[x.bits()]) Fail(where, "subset listed twice");
    seen[x.bits()] = true;
    values[x.bits()] = RationalOf(value, where);
  }
  for (std::size_t b = 0; b < total; ++b) {
    if (!seen[b]) {
      Fail("/entropy", "missing entry for subset " +
                           users.Format(Subset(static_cast<std::uint32_t>(b))));
    }
  }
  return values;
}

PacketSource PacketsFromJson(const Json& doc) {
  const Json& packets = Field(doc, "packets", "/");
  const GroundSet users = UsersOf(doc, &packets);
  const auto entries = PerUser(users, packets, "/packets");
  std::vector<std::vector<std::string>> lists(users.size());
  for (int u = 0; u < users.size(); ++u) {
    if (entries[u] != nullptr) {
      lists[u] = LabelList(*entries[u], "/packets/" + users.label(u));
    }
  }
  std::vector<std::string> universe;
  if (doc.contains("universe")) universe = LabelList(doc["universe"], "/universe");
  try {
    return PacketSource(users, std::move(lists), std::move(universe));
  } catch (const DomainError& e) {
    Fail("/packets", e.what());
  }
}

LinearSource LinearFromJson(const Json& doc) {
  const Json& rows = Field(doc, "rows", "/");
  const GroundSet users = UsersOf(doc, &rows);
  const Json& q = Field(doc, "field", "/");
  const Json& d = Field(doc, "dimension", "/");
  if (!q.is_number_unsigned() || !d.is_number_unsigned()) {
    Fail("/", "\"field\" and \"dimension\" must be non-negative integers");
  }
  const auto entries = PerUser(users, rows, "/rows");
  std::vector<std::vector<Row>> obs(users.size());
  for (int u = 0; u < users.size(); ++u) {
    if (entries[u] == nullptr) continue;
    const std::string where = "/rows/" + users.label(u);
    if (!entries[u]->is_array()) Fail(where, "expected an array of rows");
    for (const Json& r : *entries[u]) {
      if (!r.is_array()) Fail(where, "expected a row of integers");
      Row row;
      for (const Json& x : r) {
        if (!x.is_number_unsigned()) Fail(where, "coefficients must be >= 0");
        row.push_back(x.get<FieldElement>());
      }
      obs[u].push_back(std::move(row));
    }
  }
  try {
    return LinearSource(users, PrimeField(q.get<std::uint32_t>()),
                        d.get<int>(), std::move(obs));
  } catch (const DomainError& e) {
    Fail("/rows", e.what());
  }
}

Json RatesToJson(const GroundSet& users, const RateVector& r, Subset which) {
  Json out = Json::object();
  which.ForEachMember(
      [&](int i) { out[users.label(i)] = ToString(r.values()[i]); });
  return out;
}

}  // namespace

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Json ParseJson(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw FormatError(e.what());
  }
}

SourceModel SourceFromJson(const Json& doc) {
  if (!doc.is_object()) Fail("/", "expected an object");
  const std::string model = ModelOf(doc);
  if (model == "packet") return PacketsFromJson(doc);
  if (model == "linear") return LinearFromJson(doc);
  if (model == "table") {
    RawEntropyTable raw = RawTableFromJson(doc);
    try {
      return TableSource(raw.users, std::move(raw.values));
    } catch (const DomainError& e) {
      Fail("/entropy", e.what());
    }
  }
  Fail("/model", "unknown model \"" + model + "\"");
}

SourceModel ParseSource(std::string_view text) {
  return SourceFromJson(ParseJson(text));
}

SourceModel LoadSource(const std::filesystem::path& path) {
  try {
    return ParseSource(ReadFile(path));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

RawEntropyTable RawTableFromJson(const Json& doc) {
  if (!doc.is_object()) Fail("/", "expected an object");
  if (ModelOf(doc) != "table") {
    const SourceModel source = SourceFromJson(doc);
    return {Users(source), kernels::EntropyValues(source)};
  }
  const Json& entropy = Field(doc, "entropy", "/");
  GroundSet users = UsersOf(doc, nullptr);
  std::vector<Rational> values = TableValues(users, entropy);
  return {std::move(users), std::move(values)};
}

Json SourceToJson(const PacketSource& source) {
  Json doc;
  doc["model"] = "packet";
  doc["users"] = source.users().labels();
  Json packets = Json::object();
  for (int u = 0; u < source.users().size(); ++u) {
    Json list = Json::array();
    for (int p : source.packets_of(u)) list.push_back(source.universe()[p]);
    packets[source.users().label(u)] = std::move(list);
  }
  doc["packets"] = std::move(packets);
  return doc;
}

Json PlanToJson(const StagePlan& plan) {
  Json doc;
  doc["format"] = "somni-stage-plan/1";
  doc["model"] = ToString(plan.model);
  doc["users"] = plan.users.labels();
  doc["chunk_factor"] = plan.chunk_factor;
  doc["field"] = plan.field;
  doc["seed"] = plan.seed;
  doc["min_sum_rate"] = ToString(plan.min_sum_rate);
  Json stages = Json::array();
  for (const Stage& s : plan.stages) {
    Json target = Json::array();
    s.target.ForEachMember([&](int i) { target.push_back(plan.users.label(i)); });
    Json stage;
    stage["target"] = std::move(target);
    stage["rates"] = RatesToJson(plan.users, s.rates, s.target);
    stages.push_back(std::move(stage));
  }
  doc["stages"] = std::move(stages);
  doc["total_rates"] = RatesToJson(plan.users, plan.total_rates, plan.users.All());
  return doc;
}

StagePlan PlanFromJson(const Json& doc) {
  if (!doc.is_object()) Fail("/", "expected an object");
  GroundSet users = UsersOf(doc, nullptr);
  const int n = users.size();
  Model model;
  try {
    model = ParseModel(Field(doc, "model", "/").get<std::string>());
  } catch (const Json::exception&) {
    Fail("/model", "expected a string");
  } catch (const FormatError& e) {
    Fail("/model", e.what());
  }
  const Json& chunk = Field(doc, "chunk_factor", "/");
  const Json& field = Field(doc, "field", "/");
  if (!chunk.is_number_unsigned() || chunk.get<int>() < 1) {
    Fail("/chunk_factor", "expected a positive integer");
  }
  if (!field.is_number_unsigned() || !IsPrime(field.get<std::uint64_t>())) {
    Fail("/field", "expected a prime");
  }
  std::uint64_t seed = 0;
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) Fail("/seed", "expected an integer");
    seed = doc["seed"].get<std::uint64_t>();
  }

  std::vector<Stage> stages;
  RateVector total(n, users.All());
  const Json& list = Field(doc, "stages", "/");
  if (!list.is_array()) Fail("/stages", "expected an array");
  for (std::size_t k = 0; k < list.size(); ++k) {
    const std::string where = "/stages/" + std::to_string(k);
    Subset target;
    try {
      target = users.SubsetOf(LabelList(Field(list[k], "target", where), where + "/target"));
    } catch (const DomainError& e) {
      Fail(where + "/target", e.what());
    }
    RateVector rates(n, target);
    const auto entries = PerUser(users, Field(list[k], "rates", where), where + "/rates");
    for (int u = 0; u < n; ++u) {
      if (entries[u] == nullptr) continue;
      if (!target.contains(u)) Fail(where + "/rates", "rate outside the target");
      rates[u] = RationalOf(*entries[u], where + "/rates/" + users.label(u));
      if (rates[u] < Rational(0)) Fail(where + "/rates", "negative rate");
    }
    total += rates;
    stages.push_back({target, std::move(rates)});
  }
  Rational min_sum_rate = total.Total();
  if (doc.contains("min_sum_rate")) {
    min_sum_rate = RationalOf(doc["min_sum_rate"], "/min_sum_rate");
  }
  return StagePlan{std::move(users), model, chunk.get<int>(),
                   field.get<std::uint32_t>(), seed, min_sum_rate,
                   std::move(stages), std::move(total)};
}

std::string TranscriptToJsonLines(const GroundSet& users,
                                  const SimulationResult& result) {
  std::string out;
  for (const Broadcast& b : result.transcript) {
    Json rec;
    rec["type"] = "broadcast";
    rec["run"] = b.run;
    rec["stage"] = b.stage;
    rec["attempt"] = b.attempt;
    rec["sender"] = users.label(b.sender);
    rec["coding_row"] = b.coding_row;
    rec["q"] = result.q;
    out += rec.dump() + "\n";
  }
  Json summary;
  summary["type"] = "summary";
  summary["q"] = result.q;
  summary["chunk_factor"] = result.chunk_factor;
  summary["required_rank"] = result.required_rank;
  Json decoded = Json::object();
  Json ranks = Json::object();
  for (int u = 0; u < users.size(); ++u) {
    decoded[users.label(u)] = static_cast<bool>(result.decoded[u]);
    ranks[users.label(u)] = result.ranks[u];
  }
  summary["decoded"] = std::move(decoded);
  summary["ranks"] = std::move(ranks);
  Json stages = Json::array();
  for (const StageReport& s : result.stages) {
    Json st;
    st["stage"] = s.stage;
    Json target = Json::array();
    s.target.ForEachMember([&](int i) { target.push_back(users.label(i)); });
    st["target"] = std::move(target);
    st["attempts"] = s.attempts;
    st["target_decoded"] = s.target_decoded;
    stages.push_back(std::move(st));
  }
  summary["stages"] = std::move(stages);
  summary["runs"] = result.runs;
  summary["retries"] = result.retries();
  summary["all_decoded"] = result.all_decoded();
  out += summary.dump() + "\n";
  return out;
}

}  // namespace somni
