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

#include "evofuzz/experiments.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <sstream>
#include <thread>

#include "evofuzz/errors.h"

namespace evofuzz {

using nlohmann::json;

namespace {

// Replays black-box tests generation by generation with coverage on, so
// the campaign itself never sees coverage.
class ReplaySink : public RecordSink {
 public:
  explicit ReplaySink(Harness& harness) : harness_(harness) {}

  void OnGeneration(int generation,
                    std::span<const TestRecord> records) override {
    for (const auto& r : records) {
      ExecutionResult replayed;
      try {
        replayed = harness_.Execute(Call::Of(r.individual), true);
      } catch (const ContractViolation&) {
        throw;
      } catch (const std::exception&) {
        replayed.outcome = Outcome::kCrash;
      }
      tracker_.Add(generation, replayed);
    }
  }
  const CoverageSummary& summary() const { return tracker_.summary(); }

 private:
  Harness& harness_;
  CoverageTracker tracker_;
};

std::string Fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string Pvalue(double p) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), p < 1e-4 ? "%.2e" : "%.4f", p);
  return buf;
}

json EncodeMannWhitney(const MannWhitneyReport& r) {
  return {{"U", r.u}, {"z", r.z}, {"p", r.p}, {"A12", r.a12}};
}

json EncodeKruskal(const KruskalWallisReport& r) {
  return {{"H", r.h}, {"df", r.df}, {"p", r.p}};
}

json EncodeArm(const ArmResult& r) {
  json j = {{"seed", r.seed},
            {"tests", r.tests},
            {"distinct_blocks", r.distinct_blocks},
            {"distinct_branches", r.distinct_branches}};
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

template <typename Fn>
ArmResult Guarded(uint64_t seed, Fn fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    ArmResult r;
    r.seed = seed;
    r.error = e.what();
    return r;
  }
}

}  // namespace

ArmResult RunEvolutionaryArm(Harness& harness, const CampaignConfig& config) {
  CoverageTracker tracker;
  CampaignState st = RunCampaign(harness, config, &tracker);
  ArmResult r;
  r.seed = config.seed;
  r.tests = st.tests_executed;
  r.distinct_blocks = tracker.summary().distinct_blocks;
  r.distinct_branches = tracker.summary().distinct_branches;
  r.target_size_history = std::move(st.target_size_history);
  return r;
}

ArmResult RunBlackBoxArm(Harness& harness, const CampaignConfig& config,
                         uint64_t tests) {
  CampaignConfig bb = config;
  bb.blackbox = true;
  bb.stop = TestLimit{tests};
  ReplaySink sink(harness);
  CampaignState st = RunCampaign(harness, bb, &sink);
  ArmResult r;
  r.seed = bb.seed;
  r.tests = st.tests_executed;
  r.distinct_blocks = sink.summary().distinct_blocks;
  r.distinct_branches = sink.summary().distinct_branches;
  r.target_size_history = std::move(st.target_size_history);
  return r;
}

void ParallelFor(int count, int jobs, const std::function<void(int)>& fn) {
  jobs = std::max(1, std::min(jobs, count));
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> threads;
  for (int t = 0; t < jobs; ++t) {
    threads.emplace_back([&] {
      for (int i = next++; i < count; i = next++) fn(i);
    });
  }
  for (auto& t : threads) t.join();
}

namespace {

void Summarize(ComparisonReport& report) {
  for (size_t i = 0; i < report.a.size(); ++i) {
    // Only pairs where both arms completed enter the statistics.
    if (!report.a[i].error.empty() || !report.b[i].error.empty()) continue;
    report.a_blocks.push_back(report.a[i].distinct_blocks);
    report.b_blocks.push_back(report.b[i].distinct_blocks);
  }
  if (report.a_blocks.empty()) return;
  report.mann_whitney = MannWhitney(report.a_blocks, report.b_blocks);
  report.gain = ComputeCoverageGain(report.a_blocks, report.b_blocks);
  report.median_a = Median(report.a_blocks);
  report.median_b = Median(report.b_blocks);
}

}  // namespace

ComparisonReport RunComparison(const HarnessFactory& factory,
                               const ComparisonOptions& options) {
  options.evo.Validate();
  if (options.reps < 1) throw ValidationError("reps must be positive");
  if (!(options.slowdown > 0)) throw ValidationError("slowdown must be > 0");
  ComparisonReport report;
  report.a.resize(options.reps);
  report.b.resize(options.reps);
  ParallelFor(options.reps, options.jobs, [&](int i) {
    CampaignConfig cfg = options.evo;
    cfg.seed = options.evo.seed + i;
    std::unique_ptr<Harness> harness = factory();
    report.a[i] = Guarded(cfg.seed, [&] {
      return RunEvolutionaryArm(*harness, cfg);
    });
    if (!report.a[i].error.empty()) {
      report.b[i] = report.a[i];
      return;
    }
    const auto budget = static_cast<uint64_t>(
        std::ceil(report.a[i].tests * options.slowdown - 1e-9));
    report.b[i] = Guarded(cfg.seed, [&] {
      return RunBlackBoxArm(*harness, cfg, budget);
    });
  });
  Summarize(report);
  return report;
}

ComparisonReport RunPairedConfigs(const HarnessFactory& factory,
                                  const CampaignConfig& a,
                                  const CampaignConfig& b, int reps, int jobs,
                                  std::string label_a, std::string label_b) {
  a.Validate();
  b.Validate();
  if (reps < 1) throw ValidationError("reps must be positive");
  ComparisonReport report;
  report.label_a = std::move(label_a);
  report.label_b = std::move(label_b);
  report.a.resize(reps);
  report.b.resize(reps);
  ParallelFor(reps, jobs, [&](int i) {
    std::unique_ptr<Harness> harness = factory();
    CampaignConfig ca = a, cb = b;
    ca.seed = a.seed + i;
    cb.seed = b.seed + i;
    report.a[i] = Guarded(ca.seed, [&] { return RunEvolutionaryArm(*harness, ca); });
    report.b[i] = Guarded(cb.seed, [&] { return RunEvolutionaryArm(*harness, cb); });
  });
  Summarize(report);
  return report;
}

json ComparisonReport::ToJson() const {
  json arms_a = json::array(), arms_b = json::array();
  for (const auto& r : a) arms_a.push_back(EncodeArm(r));
  for (const auto& r : b) arms_b.push_back(EncodeArm(r));
  json gain_json = {{"evo_mean", gain.evo_mean}, {"bb_mean", gain.bb_mean}};
  if (gain.infinite) {
    gain_json["ratio"] = "∞";
  } else {
    gain_json["ratio"] = gain.ratio;
  }
  return {{"labels", {label_a, label_b}},
          {"n", a_blocks.size()},
          {"mean", {Mean(a_blocks), Mean(b_blocks)}},
          {"sd", {StdDev(a_blocks), StdDev(b_blocks)}},
          {"median", {median_a, median_b}},
          {"mann_whitney", EncodeMannWhitney(mann_whitney)},
          {"gain", gain_json},
          {"repetitions", {{label_a, arms_a}, {label_b, arms_b}}}};
}

std::string ComparisonReport::ToText() const {
  std::ostringstream out;
  out << "Distinct blocks over " << a_blocks.size() << " repetitions\n";
  out << "  config   mean      sd        median\n";
  auto row = [&](const std::string& label, const std::vector<double>& xs,
                 double median) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "  %-8s %-9s %-9s %s\n", label.c_str(),
                  Fixed(Mean(xs)).c_str(), Fixed(StdDev(xs)).c_str(),
                  Fixed(median, 1).c_str());
    out << buf;
  };
  row(label_a, a_blocks, median_a);
  row(label_b, b_blocks, median_b);
  out << "Mann-Whitney U=" << Fixed(mann_whitney.u, 1)
      << " z=" << Fixed(mann_whitney.z, 3) << " p=" << Pvalue(mann_whitney.p)
      << "\n";
  out << "A12(" << label_a << "," << label_b << ")=" << Fixed(mann_whitney.a12, 3)
      << "\n";
  out << "Gain " << label_a << "/" << label_b << " = " << gain.ToString()
      << "\n";
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i].error.empty()) out << "rep " << i << " failed: " << a[i].error << "\n";
    else if (!b[i].error.empty()) out << "rep " << i << " failed: " << b[i].error << "\n";
  }
  return out.str();
}

std::string ConfigLabel(FitnessKind f, SelectionKind s) {
  return "F_" + std::string(FitnessKindName(f)) + "+S_" +
         std::string(SelectionKindName(s));
}

RankingReport RunRanking(const HarnessFactory& factory,
                         const RankingOptions& options) {
  options.base.Validate();
  if (options.reps < 2) throw ValidationError("reps must be at least 2");
  if (options.fitness.empty() || options.selection.empty() ||
      options.fitness.size() * options.selection.size() < 2) {
    throw ValidationError("ranking needs at least two configurations");
  }
  struct Cell {
    FitnessKind f;
    SelectionKind s;
  };
  std::vector<Cell> cells;
  for (auto f : options.fitness) {
    for (auto s : options.selection) cells.push_back({f, s});
  }
  const int reps = options.reps;
  std::vector<ArmResult> results(cells.size() * reps);
  ParallelFor(static_cast<int>(results.size()), options.jobs, [&](int k) {
    const Cell& cell = cells[k / reps];
    CampaignConfig cfg = options.base;
    cfg.fitness = cell.f;
    cfg.selection = cell.s;
    cfg.seed = options.base.seed + k % reps;
    std::unique_ptr<Harness> harness = factory();
    results[k] = Guarded(cfg.seed, [&] { return RunEvolutionaryArm(*harness, cfg); });
  });

  RankingReport report;
  std::map<FitnessKind, SampleGroup> by_fitness;
  std::map<SelectionKind, SampleGroup> by_selection;
  for (size_t c = 0; c < cells.size(); ++c) {
    SampleGroup g{ConfigLabel(cells[c].f, cells[c].s), {}};
    for (int i = 0; i < reps; ++i) {
      const ArmResult& r = results[c * reps + i];
      if (!r.error.empty()) {
        report.errors.push_back(g.label + " seed " + std::to_string(r.seed) +
                                ": " + r.error);
        continue;
      }
      g.values.push_back(r.distinct_blocks);
      auto& fg = by_fitness[cells[c].f];
      fg.label = "F_" + std::string(FitnessKindName(cells[c].f));
      fg.values.push_back(r.distinct_blocks);
      auto& sg = by_selection[cells[c].s];
      sg.label = "S_" + std::string(SelectionKindName(cells[c].s));
      sg.values.push_back(r.distinct_blocks);
    }
    if (g.values.empty()) throw ValidationError(g.label + ": every repetition failed");
    report.groups.push_back(std::move(g));
  }
  report.ranking = RankConfigurations(report.groups, options.alpha);
  auto factor = [](const auto& by) -> std::optional<KruskalWallisReport> {
    if (by.size() < 2) return std::nullopt;
    std::vector<SampleGroup> groups;
    for (const auto& [k, g] : by) groups.push_back(g);
    return KruskalWallis(groups);
  };
  report.fitness_factor = factor(by_fitness);
  report.selection_factor = factor(by_selection);
  return report;
}

json RankingReport::ToJson() const {
  json rows = json::array();
  for (const auto& e : ranking) {
    const SampleGroup* g = nullptr;
    for (const auto& x : groups) {
      if (x.label == e.label) g = &x;
    }
    rows.push_back({{"rank", e.rank},
                    {"config", e.label},
                    {"score", e.score},
                    {"n", g->values.size()},
                    {"mean", e.mean},
                    {"sd", StdDev(g->values)},
                    {"values", g->values}});
  }
  json j = {{"ranking", rows}, {"errors", errors}};
  if (fitness_factor) j["kruskal_wallis_fitness"] = EncodeKruskal(*fitness_factor);
  if (selection_factor) {
    j["kruskal_wallis_selection"] = EncodeKruskal(*selection_factor);
  }
  return j;
}

std::string RankingReport::ToText() const {
  std::ostringstream out;
  out << "Rank  Score  Mean      Configuration\n";
  for (const auto& e : ranking) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-5d %+-6d %-9s %s\n", e.rank, e.score,
                  Fixed(e.mean).c_str(), e.label.c_str());
    out << buf;
  }
  if (fitness_factor) {
    out << "Kruskal-Wallis (fitness function): H=" << Fixed(fitness_factor->h, 3)
        << " df=" << fitness_factor->df << " p=" << Pvalue(fitness_factor->p)
        << "\n";
  }
  if (selection_factor) {
    out << "Kruskal-Wallis (selection algorithm): H="
        << Fixed(selection_factor->h, 3) << " df=" << selection_factor->df
        << " p=" << Pvalue(selection_factor->p) << "\n";
  }
  for (const auto& e : errors) out << "failed: " << e << "\n";
  return out.str();
}

}  // namespace evofuzz
