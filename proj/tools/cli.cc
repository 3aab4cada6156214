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

#include "cli.h"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "somni/compsetso.h"
#include "somni/errors.h"
#include "somni/io.h"
#include "somni/kernels.h"
#include "somni/multistage.h"
#include "somni/omniscience.h"
#include "somni/rlnc.h"
#include "somni/sources.h"

namespace somni::cli {
namespace {

struct RunConfig {
  std::string command;
  std::string source;
  std::string plan;
  std::string model = "asymptotic";
  std::string alpha = "lower-bound";
  std::string order;
  std::uint64_t seed = 0;
  std::string out;
};

std::vector<std::string> SplitOrder(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    out.push_back(item);
  }
  return out;
}

SourceModel LoadConfigured(const RunConfig& config) {
  SourceModel source = LoadSource(config.source);
  if (!config.order.empty()) {
    const auto order = SplitOrder(config.order);
    source = Reorder(source, order);
  }
  return source;
}

std::string RatesText(const RateVector& r) {
  std::string s = "(";
  for (int i = 0; i < r.num_users(); ++i) {
    if (i) s += ",";
    s += ToString(r.values()[i]);
  }
  return s + ")";
}

// Writes `text` to --out if given, otherwise to `out`.
void Emit(const RunConfig& config, const std::string& text, std::ostream& out) {
  if (config.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(config.out, std::ios::binary);
  if (!file) throw FormatError("cannot write " + config.out);
  file << text;
}

int CmdMinrate(const RunConfig& config, std::ostream& out) {
  const Model model = ParseModel(config.model);
  const SourceModel source = LoadConfigured(config);
  const EntropyTable h = kernels::BuildEntropyTable(source);
  const GroundSet& users = h.users();
  const MinSumRateResult result = MinSumRate(h, h.All(), model);
  // Upper-bound evidence: a finished rate vector meeting the value.
  const RateVector r = OptimalRateVector(h, model);

  std::ostringstream text;
  text << ToString(result.value) << "\n";
  text << "model: " << ToString(model) << "\n";
  text << "maximizing partition: " << Format(users, result.maximizing_partition)
       << "\n";
  text << "partitions scanned: " << result.partitions_scanned << "\n";
  if (model == Model::kNonAsymptotic) {
    text << "asymptotic value: " << ToString(result.asymptotic_value) << "\n";
  }
  text << "certificate: partition bound " << ToString(result.asymptotic_value)
       << "; rates " << RatesText(r) << " sum " << ToString(r.Total())
       << " and satisfy every SW constraint\n";
  Emit(config, text.str(), out);
  return kOk;
}

int CmdCompset(const RunConfig& config, std::ostream& out) {
  const Model model = ParseModel(config.model);
  const AlphaMode mode = ParseAlphaMode(config.alpha);
  const SourceModel source = LoadConfigured(config);
  const EntropyTable h = kernels::BuildEntropyTable(source);
  const AlphaChoice alpha = AlphaChoice::Make(h, mode, model);
  const CompSetOutcome outcome = CompSetSO(h, alpha);
  const Certificate cert = CertifyOutcome(h, alpha, outcome);

  std::ostringstream text;
  if (outcome.found()) {
    text << h.users().Format(*outcome.complementary_subset) << "\n";
    text << "trigger user: " << h.users().label(outcome.trigger_user) << "\n";
  } else {
    text << "none; optimal rates " << RatesText(outcome.rates) << "\n";
  }
  text << "alpha: " << ToString(alpha.value) << " (" << ToString(alpha.mode)
       << ", " << ToString(model) << ")\n";
  text << "candidates: " << outcome.candidates << "\n";
  text << "certificate:\n" << cert.text;
  Emit(config, text.str(), out);
  return kOk;
}

std::string StageLine(const StagePlan& plan, std::size_t k) {
  const Stage& s = plan.stages[k];
  std::ostringstream line;
  line << "stage " << k + 1 << ": target " << plan.users.Format(s.target)
       << " rates " << RatesText(s.rates) << "\n";
  return line.str();
}

int CmdPlan(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const Model model = ParseModel(config.model);
  const SourceModel source = LoadConfigured(config);
  const auto* packets = std::get_if<PacketSource>(&source);
  if (packets == nullptr) {
    throw DomainError("plan needs a packet source");
  }
  const PlanResult result = PlanMultistage(*packets, model, config.seed);
  const StagePlan& plan = result.plan;

  std::ostringstream summary;
  for (std::size_t k = 0; k < plan.stages.size(); ++k) {
    summary << StageLine(plan, k);
    const StageTrace& t = result.trace[k];
    summary << "  local users " << t.users.Format(t.local_target)
            << ", local rates " << RatesText(t.local_rates) << " (x"
            << plan.chunk_factor << " chunks), alpha "
            << ToString(t.alpha_mode) << "\n";
    std::istringstream cert(t.certificate);
    for (std::string line; std::getline(cert, line);) {
      summary << "  certificate: " << line << "\n";
    }
  }
  summary << "total " << ToString(plan.total_rates.Total()) << " = R(V) "
          << ToString(plan.min_sum_rate) << "; totals "
          << RatesText(plan.total_rates) << "; chunk factor "
          << plan.chunk_factor << ", field " << plan.field << "\n";

  const std::string json = PlanToJson(plan).dump(2) + "\n";
  if (config.out.empty()) {
    out << json;
    err << summary.str();
  } else {
    Emit(config, json, out);
    out << summary.str();
  }
  return kOk;
}

int CmdSimulate(const RunConfig& config, std::ostream& out) {
  const SourceModel source = LoadConfigured(config);
  const auto* packets = std::get_if<PacketSource>(&source);
  if (packets == nullptr) throw DomainError("simulate needs a packet source");
  if (config.plan.empty()) throw FormatError("simulate needs --plan");
  const StagePlan plan = [&] {
    try {
      return PlanFromJson(ParseJson(ReadFile(config.plan)));
    } catch (const FormatError& e) {
      throw FormatError(config.plan + ": " + e.what());
    }
  }();
  const SimulationResult result = ExecutePlan(*packets, plan, config.seed);
  const GroundSet& users = packets->users();
  if (!config.out.empty()) Emit(config, TranscriptToJsonLines(users, result), out);

  out << "field " << result.q << ", chunk factor " << result.chunk_factor
      << ", broadcasts " << result.transcript.size() << ", runs "
      << result.runs << ", retries " << result.retries() << "\n";
  for (const StageReport& s : result.stages) {
    out << "stage " << s.stage + 1 << ": target " << users.Format(s.target)
        << ", attempts " << s.attempts << ", "
        << (s.target_decoded ? "local omniscience" : "target NOT decoded")
        << "\n";
  }
  for (int u = 0; u < users.size(); ++u) {
    out << "user " << users.label(u) << ": rank " << result.ranks[u] << "/"
        << result.required_rank << (result.decoded[u] ? " decoded" : " FAILED")
        << "\n";
  }
  const SwCheck sw = CheckSwAchievable(kernels::BuildEntropyTable(source),
                                       users.All(), plan.total_rates);
  if (!sw) {
    out << "plan totals violate the SW constraint on "
        << users.Format(*sw.violating) << "\n";
  }
  out << (result.all_decoded() ? "all users decoded" : "decode failure") << "\n";
  return result.all_decoded() ? kOk : kDecodeFailed;
}

int CmdEnumerate(const RunConfig& config, std::ostream& out) {
  const SourceModel source = LoadConfigured(config);
  const EntropyTable h = kernels::BuildEntropyTable(source);
  std::ostringstream text;
  for (Model model : {Model::kAsymptotic, Model::kNonAsymptotic}) {
    const auto list = EnumerateComplementaryVerified(h, model);
    text << ToString(model) << " (" << list.size() << "):";
    for (Subset x : list) text << " " << h.users().Format(x);
    text << "\n";
  }
  text << "certificate: sum-rate and Dilworth tests agree on every "
          "non-singleton proper subset\n";
  Emit(config, text.str(), out);
  return kOk;
}

int CmdValidate(const RunConfig& config, std::ostream& out) {
  const RawEntropyTable raw =
      RawTableFromJson(ParseJson(ReadFile(config.source)));
  const PolymatroidReport report =
      ValidatePolymatroid(raw.users.size(), raw.values);
  Emit(config, Describe(raw.users, report) + "\n", out);
  return report.valid() ? kOk : kBadInput;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Successive omniscience planner and simulator", "somni"};
  app.require_subcommand(1);
  RunConfig config;

  auto add_common = [&](CLI::App* sub, bool with_alpha) {
    sub->add_option("source", config.source, "Source description (JSON)")
        ->required();
    sub->add_option("--model", config.model, "asymptotic | non-asymptotic")
        ->capture_default_str();
    if (with_alpha) {
      sub->add_option("--alpha", config.alpha, "exact | lower-bound")
          ->capture_default_str();
    }
    sub->add_option("--order", config.order,
                    "User order as a comma list of labels");
    sub->add_option("--seed", config.seed, "Random seed")->capture_default_str();
    sub->add_option("--out", config.out, "Output file");
  };
  add_common(app.add_subcommand("minrate", "Minimum sum-rate"), false);
  add_common(app.add_subcommand("compset", "Find a complementary subset"), true);
  add_common(app.add_subcommand("plan", "Multi-stage plan"), false);
  CLI::App* simulate = app.add_subcommand("simulate", "Run a plan with RLNC");
  add_common(simulate, false);
  simulate->add_option("--plan", config.plan, "Stage plan (JSON)")->required();
  add_common(app.add_subcommand("enumerate", "List complementary subsets"),
             false);
  add_common(app.add_subcommand("validate", "Polymatroid check"), false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadInput;
  }
  config.command = app.get_subcommands().front()->get_name();

  try {
    if (config.command == "minrate") return CmdMinrate(config, out);
    if (config.command == "compset") return CmdCompset(config, out);
    if (config.command == "plan") return CmdPlan(config, out, err);
    if (config.command == "simulate") return CmdSimulate(config, out);
    if (config.command == "enumerate") return CmdEnumerate(config, out);
    if (config.command == "validate") return CmdValidate(config, out);
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const CertificationError& e) {
    err << "certification failed: " << e.what() << "\n";
    return kCertificationFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}

}  // namespace somni::cli
