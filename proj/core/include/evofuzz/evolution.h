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

#ifndef EVOFUZZ_EVOLUTION_H_
#define EVOFUZZ_EVOLUTION_H_

#include <bit>
#include <cstdint>
#include <functional>

#include "evofuzz/config.h"
#include "evofuzz/coverage.h"
#include "evofuzz/rng.h"
#include "evofuzz/service.h"

namespace evofuzz {

// AFL-style logarithmic hit-count bin: floor(log2 n) for n >= 1.
constexpr int Bucket(uint64_t hits) {
  return hits == 0 ? 0 : std::bit_width(hits) - 1;
}

// Scores one execution against the coverage accumulated before the current
// generation ran.
//   kExecutedBlocks:       number of covered blocks.
//   kLeastExecuted:        sum over covered blocks of 1 / (1 + past count).
//   kLeastBranchHitCount:  sum over covered branches of
//                          2^-Bucket(max(1, past hits)).
double EvaluateFitness(const ExecutionResult& result,
                       const GlobalCoverageState& previous, FitnessKind kind);

// Picks one parent from `pop`, whose `fitness` must parallel its
// individuals. Throws ContractViolation on an empty population.
const Individual& Select(const Population& pop, SelectionKind kind, int tour,
                         Rng& rng);
// Uniform choice, used by black-box campaigns which never score tests.
const Individual& SelectUniform(const Population& pop, Rng& rng);

// Probability of each individual (in population order) under the given
// selection scheme. Tournament probabilities are exact for the
// without-replacement draw.
std::vector<double> SelectionProbabilities(const Population& pop,
                                           SelectionKind kind, int tour);

// Rewards the population with the best mean fitness (+1) and shrinks the
// weakest one above the floor (-1), then trims half of any surplus over
// `max_community_size` from the weakest populations. Populations never drop
// below kMinTargetSize. When every mean is equal there is no best or
// weakest population and only the surplus rule applies.
void UpdateTargetSizes(Community& community, int max_community_size);

using Selector = std::function<const Individual&(const Population&, Rng&)>;
using Crossoverer =
    std::function<Individual(const Individual&, const Individual&, Rng&)>;
using Mutator = std::function<Individual(const Individual&, Rng&)>;

// Breeds each population up to its target size and promotes the offspring.
// Every offspring receives a fresh id from `ids`, including clones.
void NextGeneration(Community& community, const CampaignConfig& config,
                    const Selector& select, const Crossoverer& crossover,
                    const Mutator& mutate, Rng& rng, IdSource& ids);

}  // namespace evofuzz

#endif  // EVOFUZZ_EVOLUTION_H_
