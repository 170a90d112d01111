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

#include "evofuzz/config.h"

#include "evofuzz/errors.h"

namespace evofuzz {

std::string_view FitnessKindName(FitnessKind k) {
  switch (k) {
    case FitnessKind::kExecutedBlocks: return "executed_blocks";
    case FitnessKind::kLeastExecuted: return "least_executed";
    case FitnessKind::kLeastBranchHitCount: return "least_branch_hit_count";
  }
  return "?";
}

FitnessKind ParseFitnessKind(std::string_view name) {
  for (auto k : {FitnessKind::kExecutedBlocks, FitnessKind::kLeastExecuted,
                 FitnessKind::kLeastBranchHitCount}) {
    if (FitnessKindName(k) == name) return k;
  }
  throw ValidationError("unknown fitness function '" + std::string(name) +
                        "'");
}

std::string_view SelectionKindName(SelectionKind k) {
  switch (k) {
    case SelectionKind::kFitnessProportionate: return "fitness_proportionate";
    case SelectionKind::kRanking: return "ranking";
    case SelectionKind::kTournament: return "tournament";
  }
  return "?";
}

SelectionKind ParseSelectionKind(std::string_view name) {
  for (auto k : {SelectionKind::kFitnessProportionate, SelectionKind::kRanking,
                 SelectionKind::kTournament}) {
    if (SelectionKindName(k) == name) return k;
  }
  throw ValidationError("unknown selection algorithm '" + std::string(name) +
                        "'");
}

std::string DescribeStopCondition(const StopCondition& stop) {
  struct Visitor {
    std::string operator()(const GenerationLimit& g) const {
      return std::to_string(g.generations) + " generations";
    }
    std::string operator()(const TimeLimit& t) const {
      return std::to_string(t.duration.count()) + " ms";
    }
    std::string operator()(const FailureLimit& f) const {
      return std::to_string(f.failures) + " failures";
    }
    std::string operator()(const TestLimit& t) const {
      return std::to_string(t.tests) + " tests";
    }
  };
  return std::visit(Visitor{}, stop);
}

void CampaignConfig::Validate() const {
  if (population_initial_target_size < 2) {
    throw ValidationError("population-initial-target-size must be >= 2");
  }
  if (max_community_size < 1) {
    throw ValidationError("max-community-size must be positive");
  }
  if (!(crossover_rate >= 0 && crossover_rate <= 1)) {
    throw ValidationError("cross-over-rate must lie in [0,1]");
  }
  if (!(mutation_rate >= 0 && mutation_rate <= 1)) {
    throw ValidationError("mutation-rate must lie in [0,1]");
  }
  if (tour < 1) throw ValidationError("tour must be positive");
  if (const auto* g = std::get_if<GenerationLimit>(&stop);
      g && g->generations < 1) {
    throw ValidationError("generation limit must be positive");
  }
  if (const auto* t = std::get_if<TimeLimit>(&stop);
      t && t->duration.count() <= 0) {
    throw ValidationError("time limit must be positive");
  }
  if (const auto* f = std::get_if<FailureLimit>(&stop); f && f->failures < 1) {
    throw ValidationError("failure limit must be positive");
  }
  if (const auto* t = std::get_if<TestLimit>(&stop); t && t->tests < 1) {
    throw ValidationError("test limit must be positive");
  }
}

CampaignConfig CampaignConfig::Effective() const {
  CampaignConfig c = *this;
  if (c.blackbox) {
    c.crossover_rate = 0;
    c.mutation_rate = 1;
    c.community = false;
  }
  return c;
}

}  // namespace evofuzz
