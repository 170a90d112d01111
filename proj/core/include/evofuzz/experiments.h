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

#ifndef EVOFUZZ_EXPERIMENTS_H_
#define EVOFUZZ_EXPERIMENTS_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "evofuzz/campaign.h"
#include "evofuzz/config.h"
#include "evofuzz/harness.h"
#include "evofuzz/stats.h"

namespace evofuzz {

// Every repetition gets its own harness.
using HarnessFactory = std::function<std::unique_ptr<Harness>()>;

struct ArmResult {
  uint64_t seed = 0;
  uint64_t tests = 0;
  uint64_t distinct_blocks = 0;
  uint64_t distinct_branches = 0;
  // Target sizes per generation, for community analyses.
  std::vector<std::vector<int>> target_size_history;
  std::string error;  // nonempty when the repetition failed
};

// Runs one evolutionary campaign and reports its coverage.
ArmResult RunEvolutionaryArm(Harness& harness, const CampaignConfig& config);
// Runs a black-box campaign of `tests` tests and measures its coverage by
// replaying every test with coverage collection on.
ArmResult RunBlackBoxArm(Harness& harness, const CampaignConfig& config,
                         uint64_t tests);

// Runs fn(0..count-1) on up to `jobs` threads.
void ParallelFor(int count, int jobs, const std::function<void(int)>& fn);

struct ComparisonOptions {
  CampaignConfig evo;  // seed is the base seed; repetition i uses seed + i
  int reps = 10;
  // Black-box campaigns get ceil(evo tests * slowdown) tests.
  double slowdown = 1.0;
  int jobs = 1;
};

struct ComparisonReport {
  std::string label_a = "EVO";
  std::string label_b = "BB";
  std::vector<ArmResult> a;
  std::vector<ArmResult> b;
  std::vector<double> a_blocks;  // successful repetitions only
  std::vector<double> b_blocks;
  MannWhitneyReport mann_whitney;
  CoverageGain gain;
  double median_a = 0;
  double median_b = 0;

  nlohmann::json ToJson() const;
  std::string ToText() const;
};

// EVO against BB with paired seeds.
ComparisonReport RunComparison(const HarnessFactory& factory,
                               const ComparisonOptions& options);

// Two evolutionary configurations with paired seeds.
ComparisonReport RunPairedConfigs(const HarnessFactory& factory,
                                  const CampaignConfig& a,
                                  const CampaignConfig& b, int reps, int jobs,
                                  std::string label_a, std::string label_b);

struct RankingOptions {
  CampaignConfig base;
  int reps = 10;
  int jobs = 1;
  double alpha = 0.05;
  std::vector<FitnessKind> fitness = {FitnessKind::kExecutedBlocks,
                                      FitnessKind::kLeastExecuted,
                                      FitnessKind::kLeastBranchHitCount};
  std::vector<SelectionKind> selection = {SelectionKind::kFitnessProportionate,
                                          SelectionKind::kRanking,
                                          SelectionKind::kTournament};
};

struct RankingReport {
  std::vector<SampleGroup> groups;
  std::vector<RankEntry> ranking;
  // Factor-level tests, pooling over the other factor; present when the
  // factor has at least two levels.
  std::optional<KruskalWallisReport> fitness_factor;
  std::optional<KruskalWallisReport> selection_factor;
  std::vector<std::string> errors;

  nlohmann::json ToJson() const;
  std::string ToText() const;
};

std::string ConfigLabel(FitnessKind f, SelectionKind s);

RankingReport RunRanking(const HarnessFactory& factory,
                         const RankingOptions& options);

}  // namespace evofuzz

#endif  // EVOFUZZ_EXPERIMENTS_H_
