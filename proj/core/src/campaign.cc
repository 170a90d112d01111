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

#include "evofuzz/campaign.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "evofuzz/codec.h"
#include "evofuzz/errors.h"
#include "evofuzz/evolution.h"
#include "evofuzz/genome.h"
#include "evofuzz/rng.h"

namespace evofuzz {

using nlohmann::json;

namespace {

constexpr size_t kLogExcerptLength = 200;

bool StopReached(const CampaignState& st) {
  const StopCondition& stop = st.config.stop;
  if (const auto* g = std::get_if<GenerationLimit>(&stop)) {
    return st.generation >= g->generations;
  }
  if (const auto* t = std::get_if<TimeLimit>(&stop)) {
    return std::chrono::steady_clock::now() - st.started_at >= t->duration;
  }
  if (const auto* f = std::get_if<FailureLimit>(&stop)) {
    return st.failures.size() >= static_cast<size_t>(f->failures);
  }
  if (const auto* t = std::get_if<TestLimit>(&stop)) {
    return st.tests_executed >= t->tests;
  }
  return true;
}

// Checked after every test; only failure and test limits can trigger
// mid-generation.
bool HaltNow(const CampaignState& st) {
  if (const auto* f = std::get_if<FailureLimit>(&st.config.stop)) {
    return st.failures.size() >= static_cast<size_t>(f->failures);
  }
  if (const auto* t = std::get_if<TestLimit>(&st.config.stop)) {
    return st.tests_executed >= t->tests;
  }
  return false;
}

ExecutionResult ExecuteSafely(Harness& harness, const Individual& ind,
                              bool collect_coverage) {
  try {
    return harness.Execute(Call::Of(ind), collect_coverage);
  } catch (const ContractViolation&) {
    throw;
  } catch (const std::exception& e) {
    ExecutionResult r;
    r.outcome = Outcome::kCrash;
    r.log = std::string("harness failure: ") + e.what();
    return r;
  }
}

}  // namespace

CampaignState RunCampaign(Harness& harness, const CampaignConfig& config,
                          RecordSink* sink) {
  config.Validate();
  CampaignState st;
  st.config = config.Effective();
  const CampaignConfig& cfg = st.config;
  const ServiceDescriptor& service = harness.descriptor();
  ValidateDescriptor(service);

  Rng rng(cfg.seed);
  IdSource ids;
  // Operators stamp ids on their results; NextGeneration replaces them with
  // ids from `ids`, so these are discarded.
  IdSource scratch_ids;
  st.started_at = std::chrono::steady_clock::now();

  st.community.service = service;
  for (const auto& method : service.methods) {
    Population pop;
    pop.method = method.id;
    pop.target_size = cfg.population_initial_target_size;
    for (int i = 0; i < cfg.population_initial_target_size; ++i) {
      pop.individuals.push_back(RandomIndividual(method, rng, ids));
    }
    st.community.populations.push_back(std::move(pop));
  }

  Selector select;
  if (cfg.blackbox) {
    select = [](const Population& pop, Rng& r) -> const Individual& {
      return SelectUniform(pop, r);
    };
  } else {
    select = [&cfg](const Population& pop, Rng& r) -> const Individual& {
      return Select(pop, cfg.selection, cfg.tour, r);
    };
  }
  Crossoverer crossover = [&scratch_ids](const Individual& a,
                                         const Individual& b, Rng& r) {
    return Crossover(a, b, r, scratch_ids);
  };
  Mutator mutate = [&scratch_ids](const Individual& a, Rng& r) {
    return MutateIndividual(a, r, scratch_ids);
  };

  std::vector<TestRecord> records;
  bool halted = false;
  while (!halted && !StopReached(st)) {
    std::vector<int> sizes;
    for (const auto& pop : st.community.populations) {
      sizes.push_back(pop.target_size);
    }
    st.target_size_history.push_back(std::move(sizes));

    records.clear();
    records.reserve(st.community.TotalIndividuals());
    for (const auto& pop : st.community.populations) {
      for (const auto& ind : pop.individuals) {
        ExecutionResult result = ExecuteSafely(harness, ind, !cfg.blackbox);
        ++st.tests_executed;
        if (result.outcome == Outcome::kCrash) {
          st.failures.push_back(
              {ind.id, result.outcome, result.log.substr(0, kLogExcerptLength)});
        }
        records.push_back({ind, st.generation, std::move(result), std::nullopt});
        if (HaltNow(st)) {
          halted = true;
          break;
        }
      }
      if (halted) break;
    }

    if (!cfg.blackbox) {
      // Every test of the generation is scored against the coverage
      // accumulated up to the previous generation.
      size_t next = 0;
      for (auto& pop : st.community.populations) {
        pop.fitness.clear();
        for (size_t i = 0; i < pop.individuals.size() && next < records.size();
             ++i, ++next) {
          double f = EvaluateFitness(records[next].result, st.coverage,
                                     cfg.fitness);
          records[next].fitness = f;
          pop.fitness.push_back(f);
        }
      }
      for (const auto& rec : records) st.coverage.Update(rec.result);
    }

    if (sink != nullptr) sink->OnGeneration(st.generation, records);
    ++st.generation;
    if (halted) break;

    if (!cfg.blackbox && cfg.community) {
      UpdateTargetSizes(st.community, cfg.max_community_size);
    }
    NextGeneration(st.community, cfg, select, crossover, mutate, rng, ids);
  }
  st.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - st.started_at);
  return st;
}

// ---------------------------------------------------------------------------
// Coverage accounting.

void CoverageTracker::Add(int generation, const ExecutionResult& result) {
  if (summary_.curve.empty() || summary_.curve.back().generation != generation) {
    CurvePoint p = summary_.curve.empty() ? CurvePoint{} : summary_.curve.back();
    p.generation = generation;
    summary_.curve.push_back(p);
  }
  for (const auto& b : result.blocks) blocks_.insert(b);
  for (const auto& [e, n] : result.branches) branches_.insert(e);
  CurvePoint& p = summary_.curve.back();
  ++p.tests;
  p.distinct_blocks = blocks_.size();
  p.distinct_branches = branches_.size();
  summary_.distinct_blocks = blocks_.size();
  summary_.distinct_branches = branches_.size();
}

void CoverageTracker::OnGeneration(int generation,
                                   std::span<const TestRecord> records) {
  for (const auto& r : records) Add(generation, r.result);
}

CoverageSummary SummarizeCoverage(std::span<const TestRecord> records) {
  CoverageTracker tracker;
  for (const auto& r : records) tracker.Add(r.generation, r.result);
  return tracker.summary();
}

json EncodeCurve(const CoverageSummary& summary) {
  json curve = json::array();
  for (const auto& p : summary.curve) {
    curve.push_back({{"generation", p.generation},
                     {"tests", p.tests},
                     {"blocks", p.distinct_blocks},
                     {"branches", p.distinct_branches}});
  }
  return json{{"distinct_blocks", summary.distinct_blocks},
              {"distinct_branches", summary.distinct_branches},
              {"curve", curve}};
}

// ---------------------------------------------------------------------------
// Persistence.

json EncodeConfig(const CampaignConfig& c) {
  json stop;
  if (const auto* g = std::get_if<GenerationLimit>(&c.stop)) {
    stop = {{"generation-limit", g->generations}};
  } else if (const auto* t = std::get_if<TimeLimit>(&c.stop)) {
    stop = {{"time-limit-ms", t->duration.count()}};
  } else if (const auto* f = std::get_if<FailureLimit>(&c.stop)) {
    stop = {{"failure-limit", f->failures}};
  } else if (const auto* n = std::get_if<TestLimit>(&c.stop)) {
    stop = {{"test-limit", n->tests}};
  }
  return json{
      {"population-initial-target-size", c.population_initial_target_size},
      {"stop-condition", stop},
      {"max-community-size", c.max_community_size},
      {"cross-over-rate", c.crossover_rate},
      {"mutation-rate", c.mutation_rate},
      {"tour", c.tour},
      {"fitness", std::string(FitnessKindName(c.fitness))},
      {"selection", std::string(SelectionKindName(c.selection))},
      {"seed", c.seed},
      {"blackbox", c.blackbox},
      {"community", c.community}};
}

CampaignConfig DecodeConfig(const json& j) {
  CampaignConfig c;
  try {
    c.population_initial_target_size =
        j.at("population-initial-target-size").get<int>();
    const json& stop = j.at("stop-condition");
    if (stop.contains("generation-limit")) {
      c.stop = GenerationLimit{stop["generation-limit"].get<int>()};
    } else if (stop.contains("time-limit-ms")) {
      c.stop = TimeLimit{
          std::chrono::milliseconds(stop["time-limit-ms"].get<int64_t>())};
    } else if (stop.contains("failure-limit")) {
      c.stop = FailureLimit{stop["failure-limit"].get<int>()};
    } else if (stop.contains("test-limit")) {
      c.stop = TestLimit{stop["test-limit"].get<uint64_t>()};
    } else {
      throw ValidationError("unknown stop-condition");
    }
    c.max_community_size = j.at("max-community-size").get<int>();
    c.crossover_rate = j.at("cross-over-rate").get<double>();
    c.mutation_rate = j.at("mutation-rate").get<double>();
    c.tour = j.at("tour").get<int>();
    c.fitness = ParseFitnessKind(j.at("fitness").get<std::string>());
    c.selection = ParseSelectionKind(j.at("selection").get<std::string>());
    c.seed = j.at("seed").get<uint64_t>();
    c.blackbox = j.at("blackbox").get<bool>();
    c.community = j.value("community", true);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  c.Validate();
  return c;
}

json EncodeRecord(const TestRecord& r) {
  json j = {{"gen", r.generation},
            {"id", r.individual.id},
            {"method", r.individual.method},
            {"args", EncodeArgs(r.individual.inputs)},
            {"outcome", std::string(OutcomeName(r.result.outcome))},
            {"log", r.result.log}};
  if (r.fitness) {
    j["fitness"] = *r.fitness;
    json resp = EncodeResponse(r.result);
    j["blocks"] = std::move(resp["blocks"]);
    j["branches"] = std::move(resp["branches"]);
  }
  return j;
}

TestRecord DecodeRecord(const json& j, const ServiceDescriptor& service) {
  TestRecord r;
  try {
    r.generation = j.at("gen").get<int>();
    r.individual.id = j.at("id").get<TestId>();
    r.individual.method = j.at("method").get<MethodId>();
    r.individual.inputs = DecodeArgs(j.at("args"));
    json resp = {{"outcome", j.at("outcome")},
                 {"log", j.value("log", std::string())}};
    if (j.contains("blocks")) resp["blocks"] = j["blocks"];
    if (j.contains("branches")) resp["branches"] = j["branches"];
    r.result = DecodeResponse(resp);
    if (j.contains("fitness")) r.fitness = j["fitness"].get<double>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed record: ") + e.what());
  }
  const MethodSignature* sig = service.FindMethod(r.individual.method);
  if (sig == nullptr) {
    throw ValidationError("record references unknown method " +
                          std::to_string(r.individual.method));
  }
  if (!ValidateIndividual(r.individual, *sig)) {
    throw ValidationError("record inputs do not match the signature of " +
                          sig->name);
  }
  return r;
}

std::string GenerationFileName(int generation) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "gen-%04d.jsonl", generation);
  return buf;
}

namespace {

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

}  // namespace

CampaignWriter::CampaignWriter(std::filesystem::path dir,
                               const CampaignConfig& config,
                               const json& target)
    : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw IoError("cannot create " + dir_.string() + ": " + ec.message());
  for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
    if (entry.path().extension() == ".jsonl") {
      std::filesystem::remove(entry.path());
    }
  }
  WriteFile(dir_ / "config.json", EncodeConfig(config.Effective()).dump(2) + "\n");
  WriteFile(dir_ / "target.json", target.dump(2) + "\n");
}

void CampaignWriter::OnGeneration(int generation,
                                  std::span<const TestRecord> records) {
  std::string text;
  for (const auto& r : records) {
    text += EncodeRecord(r).dump();
    text += '\n';
  }
  WriteFile(dir_ / GenerationFileName(generation), text);
}

void CampaignWriter::Finish(const CampaignState& state,
                            const CoverageSummary& coverage) {
  json failures = json::array();
  for (const auto& f : state.failures) {
    failures.push_back({{"id", f.id},
                        {"outcome", std::string(OutcomeName(f.outcome))},
                        {"log", f.log_excerpt}});
  }
  json summary = {{"generations", state.generation},
                  {"tests", state.tests_executed},
                  {"failures", failures},
                  {"elapsed_ms", state.elapsed.count()},
                  {"target_sizes", state.target_size_history},
                  {"coverage", EncodeCurve(coverage)}};
  WriteFile(dir_ / "summary.json", summary.dump(2) + "\n");
}

LoadedCampaign LoadCampaign(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw IoError("no campaign directory at " + dir.string());
  }
  LoadedCampaign out;
  out.config = DecodeConfig(ReadJsonFile(dir / "config.json"));
  out.target = ReadJsonFile(dir / "target.json");
  try {
    out.service = DecodeDescriptor(out.target);
  } catch (const ValidationError& e) {
    throw ValidationError((dir / "target.json").string() + ": " + e.what());
  }

  std::map<int, std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    int gen;
    char tail;
    if (std::sscanf(name.c_str(), "gen-%d.jsonl%c", &gen, &tail) == 1 &&
        name == GenerationFileName(gen)) {
      files[gen] = entry.path();
    }
  }
  if (files.empty()) {
    throw ValidationError(dir.string() + ": no generation record files");
  }
  int expected = 0;
  for (const auto& [gen, path] : files) {
    if (gen != expected) {
      throw ValidationError(dir.string() + ": missing " +
                            GenerationFileName(expected));
    }
    ++expected;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      const std::string where =
          path.filename().string() + ":" + std::to_string(line_no);
      try {
        TestRecord r = DecodeRecord(json::parse(line), out.service);
        if (r.generation != gen) {
          throw ValidationError("record generation " +
                                std::to_string(r.generation) +
                                " in file for generation " +
                                std::to_string(gen));
        }
        out.records.push_back(std::move(r));
      } catch (const json::parse_error& e) {
        throw ValidationError(where + ": " + e.what());
      } catch (const ValidationError& e) {
        throw ValidationError(where + ": " + e.what());
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Replay.

ReplayReport Replay(std::span<const TestRecord> records, Harness& harness) {
  ReplayReport report;
  CoverageTracker tracker;
  report.replayed.reserve(records.size());
  for (const auto& rec : records) {
    ExecutionResult r = ExecuteSafely(harness, rec.individual, true);
    tracker.Add(rec.generation, r);
    bool same = r.outcome == rec.result.outcome;
    if (rec.fitness) {
      same = same && r.blocks == rec.result.blocks &&
             r.branches == rec.result.branches;
    }
    if (!same) ++report.mismatches;
    ++report.tests;
    report.replayed.push_back({rec.individual, rec.generation, std::move(r),
                               rec.fitness});
  }
  report.coverage = tracker.summary();
  return report;
}

ReplayReport ReplayCampaign(const std::filesystem::path& dir,
                            Harness& harness) {
  LoadedCampaign loaded = LoadCampaign(dir);
  if (!(harness.descriptor().methods == loaded.service.methods)) {
    throw ValidationError(
        "target signatures do not match the ones recorded in " + dir.string());
  }
  return Replay(loaded.records, harness);
}

}  // namespace evofuzz
