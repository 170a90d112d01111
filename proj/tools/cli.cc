// Copyright 2026 The Evofuzz Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "evofuzz/campaign.h"
#include "evofuzz/codec.h"
#include "evofuzz/errors.h"
#include "evofuzz/experiments.h"
#include "evofuzz/process_harness.h"
#include "evofuzz/synthetic.h"
#include "evofuzz/target_families.h"

namespace evofuzz {
namespace {

using nlohmann::json;

constexpr const char* kDefaultsFooter =
    "Defaults: population-initial-target-size 10, stop-condition 20 "
    "generations, max-community-size 200, cross-over-rate 0.8, "
    "mutation-rate 0.05, tour 5.";

// Flags shared by every subcommand that runs campaigns.
struct CampaignFlags {
  std::string target;
  std::string exec;
  int timeout_ms = static_cast<int>(kDefaultResponseTimeout.count());
  int initial_size = 10;
  int generations = 20;
  double time_limit_s = 0;
  int failure_limit = 0;
  uint64_t test_limit = 0;
  int max_community_size = 200;
  double crossover_rate = 0.8;
  double mutation_rate = 0.05;
  int tour = 5;
  std::string fitness = "executed_blocks";
  std::string selection = "fitness_proportionate";
  uint64_t seed = 0;
  bool blackbox = false;
  bool no_community = false;

  CLI::Option* time_limit_opt = nullptr;
  CLI::Option* failure_limit_opt = nullptr;
  CLI::Option* test_limit_opt = nullptr;

  CampaignConfig ToConfig() const {
    CampaignConfig c;
    c.population_initial_target_size = initial_size;
    c.stop = GenerationLimit{generations};
    if (time_limit_opt->count() > 0) {
      if (!(time_limit_s > 0)) throw ValidationError("time-limit must be > 0");
      c.stop = TimeLimit{std::chrono::milliseconds(
          static_cast<int64_t>(std::llround(time_limit_s * 1000)))};
    } else if (failure_limit_opt->count() > 0) {
      c.stop = FailureLimit{failure_limit};
    } else if (test_limit_opt->count() > 0) {
      c.stop = TestLimit{test_limit};
    }
    c.max_community_size = max_community_size;
    c.crossover_rate = crossover_rate;
    c.mutation_rate = mutation_rate;
    c.tour = tour;
    c.fitness = ParseFitnessKind(fitness);
    c.selection = ParseSelectionKind(selection);
    c.seed = seed;
    c.blackbox = blackbox;
    c.community = !no_community;
    c.Validate();
    return c;
  }
};

void AddTargetFlags(CLI::App* app, CampaignFlags& f, bool target_required) {
  auto* t = app->add_option("--target", f.target, "Target definition file");
  if (target_required) t->required();
  app->add_option("--exec", f.exec,
                  "Run an external target over the wire protocol instead of "
                  "interpreting the target file (which then only supplies "
                  "the method signatures)");
  app->add_option("--timeout-ms", f.timeout_ms,
                  "Response timeout for --exec targets")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
}

void AddCampaignFlags(CLI::App* app, CampaignFlags& f, bool blackbox_flags) {
  AddTargetFlags(app, f, true);
  app->add_option("--population-initial-target-size", f.initial_size,
                  "Initial target size of every population")
      ->capture_default_str();
  auto* gens = app->add_option("--generations", f.generations,
                               "Stop after this many generations")
                   ->capture_default_str();
  f.time_limit_opt = app->add_option("--time-limit", f.time_limit_s,
                                     "Stop after this many seconds (checked "
                                     "between generations)");
  f.failure_limit_opt = app->add_option("--failure-limit", f.failure_limit,
                                        "Stop at this many crashing tests");
  f.test_limit_opt =
      app->add_option("--test-limit", f.test_limit, "Stop after this many tests");
  CLI::Option* stops[] = {gens, f.time_limit_opt, f.failure_limit_opt,
                          f.test_limit_opt};
  for (auto* a : stops) {
    for (auto* b : stops) {
      if (a != b) a->excludes(b);
    }
  }
  app->add_option("--max-community-size", f.max_community_size,
                  "Bound on the sum of target sizes")
      ->capture_default_str();
  app->add_option("--cross-over-rate", f.crossover_rate,
                  "Probability of crossover per offspring")
      ->capture_default_str();
  app->add_option("--mutation-rate", f.mutation_rate,
                  "Probability of mutation per offspring")
      ->capture_default_str();
  app->add_option("--tour", f.tour, "Tournament size")->capture_default_str();
  app->add_option("--fitness", f.fitness, "Fitness function")
      ->capture_default_str()
      ->check(CLI::IsMember(
          {"executed_blocks", "least_executed", "least_branch_hit_count"}));
  app->add_option("--selection", f.selection, "Selection algorithm")
      ->capture_default_str()
      ->check(CLI::IsMember({"fitness_proportionate", "ranking", "tournament"}));
  app->add_option("--seed", f.seed, "Random seed")->capture_default_str();
  if (blackbox_flags) {
    app->add_flag("--blackbox", f.blackbox,
                  "Mutation-only fuzzing without coverage feedback");
    app->add_flag("--no-community", f.no_community,
                  "Keep every population at its initial target size");
  }
  app->footer(kDefaultsFooter);
}

json ReadJson(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

struct TargetSetup {
  json doc;  // canonical copy stored with campaigns
  ServiceDescriptor descriptor;
  std::shared_ptr<const SyntheticService> service;  // null for --exec
  std::string exec;
  std::chrono::milliseconds timeout{kDefaultResponseTimeout};

  std::unique_ptr<Harness> MakeHarness() const {
    if (service) return std::make_unique<SyntheticHarness>(service);
    return std::make_unique<ProcessHarness>(descriptor, exec, timeout);
  }
  HarnessFactory Factory() const {
    return [this] { return MakeHarness(); };
  }
};

TargetSetup SetupTarget(const json& doc, const std::string& where,
                        const std::string& exec, int timeout_ms) {
  TargetSetup t;
  t.exec = exec;
  t.timeout = std::chrono::milliseconds(timeout_ms);
  try {
    if (exec.empty()) {
      t.service = std::make_shared<const SyntheticService>(
          SyntheticService::FromJson(doc));
      t.descriptor = t.service->descriptor();
      t.doc = t.service->ToJson();
    } else {
      t.descriptor = DecodeDescriptor(doc);
      t.doc = doc;
    }
  } catch (const ValidationError& e) {
    throw ValidationError(where + ": " + e.what());
  }
  return t;
}

TargetSetup SetupTarget(const CampaignFlags& f) {
  return SetupTarget(ReadJson(f.target), f.target, f.exec, f.timeout_ms);
}

void WriteText(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

// Fans generation records out to several sinks.
class TeeSink : public RecordSink {
 public:
  explicit TeeSink(std::vector<RecordSink*> sinks) : sinks_(std::move(sinks)) {}
  void OnGeneration(int generation,
                    std::span<const TestRecord> records) override {
    for (auto* s : sinks_) s->OnGeneration(generation, records);
  }

 private:
  std::vector<RecordSink*> sinks_;
};

// ---------------------------------------------------------------------------

int CmdFuzz(const CampaignFlags& f, const std::string& out_dir,
            std::ostream& out) {
  CampaignConfig config = f.ToConfig();
  TargetSetup target = SetupTarget(f);
  std::unique_ptr<Harness> harness = target.MakeHarness();
  CampaignWriter writer(out_dir, config, target.doc);
  CoverageTracker tracker;
  TeeSink sink({&writer, &tracker});
  CampaignState st = RunCampaign(*harness, config, &sink);
  writer.Finish(st, tracker.summary());

  out << "campaign: " << out_dir << "\n";
  out << "mode: " << (config.blackbox ? "black-box" : "evolutionary") << "\n";
  out << "generations: " << st.generation << "\n";
  out << "tests: " << st.tests_executed << "\n";
  out << "crashes: " << st.failures.size() << "\n";
  if (config.blackbox) {
    out << "coverage: not collected in black-box mode (use replay)\n";
  } else {
    out << "distinct blocks: " << tracker.summary().distinct_blocks << "\n";
    out << "distinct branches: " << tracker.summary().distinct_branches << "\n";
  }
  for (size_t i = 0; i < st.failures.size() && i < 10; ++i) {
    out << "  crash in test " << st.failures[i].id << ": "
        << st.failures[i].log_excerpt << "\n";
  }
  return kExitOk;
}

int CmdReplay(const std::string& dir, const CampaignFlags& f,
              const std::string& out_path, std::ostream& out) {
  const std::filesystem::path campaign(dir);
  TargetSetup target =
      f.target.empty()
          ? SetupTarget(ReadJson((campaign / "target.json").string()),
                        (campaign / "target.json").string(), f.exec,
                        f.timeout_ms)
          : SetupTarget(f);
  std::unique_ptr<Harness> harness = target.MakeHarness();
  ReplayReport report = ReplayCampaign(campaign, *harness);

  const std::filesystem::path path =
      out_path.empty() ? campaign / "coverage.json" : std::filesystem::path(out_path);
  json j = EncodeCurve(report.coverage);
  j["tests"] = report.tests;
  j["mismatches"] = report.mismatches;
  WriteText(path, j.dump(2) + "\n");

  out << "replayed tests: " << report.tests << "\n";
  out << "distinct blocks: " << report.coverage.distinct_blocks << "\n";
  out << "distinct branches: " << report.coverage.distinct_branches << "\n";
  out << "mismatches with recorded results: " << report.mismatches << "\n";
  out << "generation  tests  blocks  branches\n";
  for (const auto& p : report.coverage.curve) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%-11d %-6llu %-7llu %llu\n", p.generation,
                  static_cast<unsigned long long>(p.tests),
                  static_cast<unsigned long long>(p.distinct_blocks),
                  static_cast<unsigned long long>(p.distinct_branches));
    out << buf;
  }
  out << "curve written to " << path.string() << "\n";
  return kExitOk;
}

void WriteReport(const std::string& dir, const json& j,
                 const std::string& text, std::ostream& out) {
  const std::filesystem::path base(dir);
  WriteText(base / "report.json", j.dump(2) + "\n");
  WriteText(base / "report.txt", text);
  out << text << "report written to " << (base / "report.json").string()
      << "\n";
}

int CmdCompare(const CampaignFlags& f, int reps, double slowdown, int jobs,
               const std::string& baseline, const std::string& out_dir,
               std::ostream& out) {
  if (reps < 2) throw ValidationError("--reps must be at least 2");
  CampaignConfig config = f.ToConfig();
  TargetSetup target = SetupTarget(f);
  ComparisonReport report;
  if (baseline == "blackbox") {
    ComparisonOptions options;
    options.evo = config;
    options.reps = reps;
    options.slowdown = slowdown;
    options.jobs = jobs;
    report = RunComparison(target.Factory(), options);
  } else {
    CampaignConfig without = config;
    without.community = false;
    report = RunPairedConfigs(target.Factory(), config, without, reps, jobs,
                              "EVO", "EVO-NC");
  }
  json j = report.ToJson();
  j["config"] = EncodeConfig(config);
  j["baseline"] = baseline;
  j["slowdown"] = slowdown;
  WriteReport(out_dir, j, report.ToText(), out);
  return kExitOk;
}

int CmdRank(const CampaignFlags& f, int reps, int jobs, double alpha,
            bool fitness_only, bool selection_only, const std::string& out_dir,
            std::ostream& out) {
  RankingOptions options;
  options.base = f.ToConfig();
  options.reps = reps;
  options.jobs = jobs;
  options.alpha = alpha;
  if (fitness_only) options.selection = {options.base.selection};
  if (selection_only) options.fitness = {options.base.fitness};
  TargetSetup target = SetupTarget(f);
  RankingReport report = RunRanking(target.Factory(), options);
  json j = report.ToJson();
  j["config"] = EncodeConfig(options.base);
  WriteReport(out_dir, j, report.ToText(), out);
  return kExitOk;
}

struct GenTargetFlags {
  std::string family;
  int depth = 8;
  int methods = 11;
  int core_depth = 8;
  double fraction = 0.5;
  uint64_t seed = 0;
  std::string out;
};

int CmdGenTarget(const GenTargetFlags& g, std::ostream& out) {
  Rng rng(g.seed);
  json doc;
  if (g.family == "gate-chain") {
    doc = GenerateBenchmark(GateChainFamily{g.depth}, rng);
  } else if (g.family == "shared-core") {
    doc = GenerateBenchmark(SharedCoreFamily{g.methods, g.core_depth}, rng);
  } else if (g.family == "dead-branch") {
    doc = GenerateBenchmark(DeadBranchFamily{g.fraction}, rng);
  } else {
    doc = TrivialTarget();
  }
  // Round-trip through the loader so emitted files are canonical and valid.
  const std::string text = SyntheticService::FromJson(doc).ToJson().dump(2) + "\n";
  if (g.out.empty()) {
    out << text;
  } else {
    WriteText(g.out, text);
  }
  return kExitOk;
}

int CmdServe(const CampaignFlags& f, std::istream& in, std::ostream& out) {
  TargetSetup target = SetupTarget(ReadJson(f.target), f.target, "", 1);
  SyntheticHarness harness(target.service);
  ServeWireProtocol(in, out, harness);
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::istream& in,
           std::ostream& out, std::ostream& err) {
  CLI::App app{"Coverage-guided evolutionary fuzzing of service interfaces"};
  app.name("evofuzz");
  app.require_subcommand(1);
  app.footer(kDefaultsFooter);

  CampaignFlags fuzz_flags;
  std::string fuzz_out = "evofuzz-campaign";
  auto* fuzz = app.add_subcommand("fuzz", "Run one fuzzing campaign");
  AddCampaignFlags(fuzz, fuzz_flags, true);
  fuzz->add_option("--out", fuzz_out, "Campaign directory")
      ->capture_default_str();

  CampaignFlags replay_flags;
  std::string replay_dir, replay_out;
  auto* replay = app.add_subcommand(
      "replay", "Re-execute a campaign with coverage on and report its curve");
  replay->add_option("--campaign", replay_dir, "Campaign directory")->required();
  AddTargetFlags(replay, replay_flags, false);
  replay->add_option("--out", replay_out,
                     "Coverage curve file (default: <campaign>/coverage.json)");

  CampaignFlags compare_flags;
  int compare_reps = 10, compare_jobs = 1;
  double slowdown = 1.0;
  std::string baseline = "blackbox", compare_out = "evofuzz-compare";
  auto* compare = app.add_subcommand(
      "compare", "Repeated evolutionary vs baseline campaigns with statistics");
  AddCampaignFlags(compare, compare_flags, false);
  compare->add_option("--reps", compare_reps, "Repetitions per engine")
      ->capture_default_str();
  compare->add_option("--slowdown", slowdown,
                      "Black-box test budget as a multiple of the "
                      "evolutionary one (simulated instrumentation cost)")
      ->capture_default_str();
  compare->add_option("--jobs", compare_jobs, "Parallel repetitions")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  compare->add_option("--baseline", baseline,
                      "blackbox, or no-community (evolutionary with fixed "
                      "target sizes)")
      ->capture_default_str()
      ->check(CLI::IsMember({"blackbox", "no-community"}));
  compare->add_option("--out", compare_out, "Report directory")
      ->capture_default_str();

  CampaignFlags rank_flags;
  int rank_reps = 10, rank_jobs = 1;
  double alpha = 0.05;
  bool fitness_only = false, selection_only = false;
  std::string rank_out = "evofuzz-rank";
  auto* rank = app.add_subcommand(
      "rank", "Rank fitness/selection configurations by pairwise tests");
  AddCampaignFlags(rank, rank_flags, false);
  rank->add_option("--reps", rank_reps, "Repetitions per configuration")
      ->capture_default_str();
  rank->add_option("--jobs", rank_jobs, "Parallel repetitions")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  rank->add_option("--alpha", alpha, "Significance level")->capture_default_str();
  auto* fo = rank->add_flag("--fitness-only", fitness_only,
                            "Vary only the fitness function");
  auto* so = rank->add_flag("--selection-only", selection_only,
                            "Vary only the selection algorithm");
  fo->excludes(so);
  rank->add_option("--out", rank_out, "Report directory")->capture_default_str();

  GenTargetFlags gen;
  auto* gen_target =
      app.add_subcommand("gen-target", "Write a synthetic benchmark target");
  gen_target->add_option("family", gen.family, "Benchmark family")
      ->required()
      ->check(CLI::IsMember({"gate-chain", "shared-core", "dead-branch", "trivial"}));
  gen_target->add_option("--depth", gen.depth, "gate-chain: number of gates")
      ->capture_default_str();
  gen_target->add_option("--methods", gen.methods, "shared-core: methods")
      ->capture_default_str();
  gen_target->add_option("--core-depth", gen.core_depth,
                         "shared-core: gates behind the deep method")
      ->capture_default_str();
  gen_target->add_option("--fraction", gen.fraction,
                         "dead-branch: fraction of unreachable blocks")
      ->capture_default_str();
  gen_target->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  gen_target->add_option("--out", gen.out, "Output file (default: stdout)");

  CampaignFlags serve_flags;
  auto* serve = app.add_subcommand(
      "serve", "Serve a synthetic target over the wire protocol on stdio");
  serve->add_option("--target", serve_flags.target, "Target definition file")
      ->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*fuzz) return CmdFuzz(fuzz_flags, fuzz_out, out);
    if (*replay) return CmdReplay(replay_dir, replay_flags, replay_out, out);
    if (*compare) {
      return CmdCompare(compare_flags, compare_reps, slowdown, compare_jobs,
                        baseline, compare_out, out);
    }
    if (*rank) {
      return CmdRank(rank_flags, rank_reps, rank_jobs, alpha, fitness_only,
                     selection_only, rank_out, out);
    }
    if (*gen_target) return CmdGenTarget(gen, out);
    if (*serve) return CmdServe(serve_flags, in, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace evofuzz
