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

#ifndef EVOFUZZ_CONFIG_H_
#define EVOFUZZ_CONFIG_H_

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

namespace evofuzz {

enum class FitnessKind : uint8_t {
  kExecutedBlocks,
  kLeastExecuted,
  kLeastBranchHitCount,
};

enum class SelectionKind : uint8_t {
  kFitnessProportionate,
  kRanking,
  kTournament,
};

// "executed_blocks" | "least_executed" | "least_branch_hit_count".
std::string_view FitnessKindName(FitnessKind k);
FitnessKind ParseFitnessKind(std::string_view name);
// "fitness_proportionate" | "ranking" | "tournament".
std::string_view SelectionKindName(SelectionKind k);
SelectionKind ParseSelectionKind(std::string_view name);

struct GenerationLimit {
  int generations = 20;
};
// Checked at generation boundaries only.
struct TimeLimit {
  std::chrono::milliseconds duration{0};
};
// Halts right after the n-th crashing test.
struct FailureLimit {
  int failures = 1;
};
// Halts right after the n-th executed test. Used to give two campaigns the
// same test budget.
struct TestLimit {
  uint64_t tests = 1;
};

using StopCondition =
    std::variant<GenerationLimit, TimeLimit, FailureLimit, TestLimit>;

std::string DescribeStopCondition(const StopCondition& stop);

// Genetic-algorithm parameters. Defaults are the reference settings:
// initial target size 10, 20 generations, community cap 200, crossover 80%,
// mutation 5%, tournament size 5.
struct CampaignConfig {
  int population_initial_target_size = 10;
  StopCondition stop = GenerationLimit{};
  int max_community_size = 200;
  double crossover_rate = 0.8;
  double mutation_rate = 0.05;
  int tour = 5;
  FitnessKind fitness = FitnessKind::kExecutedBlocks;
  SelectionKind selection = SelectionKind::kFitnessProportionate;
  uint64_t seed = 0;
  // Mutation-only fuzzing without coverage feedback.
  bool blackbox = false;
  // When false, target sizes stay at their initial value for every
  // population (fitness and selection still apply).
  bool community = true;

  // Throws ValidationError on out-of-range parameters.
  void Validate() const;
  // Copy with black-box overrides applied: crossover 0, mutation 1,
  // community off.
  CampaignConfig Effective() const;
};

}  // namespace evofuzz

#endif  // EVOFUZZ_CONFIG_H_
