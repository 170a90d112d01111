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

#include "evofuzz/evolution.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "evofuzz/errors.h"

namespace evofuzz {

double EvaluateFitness(const ExecutionResult& result,
                       const GlobalCoverageState& previous, FitnessKind kind) {
  switch (kind) {
    case FitnessKind::kExecutedBlocks:
      return static_cast<double>(result.blocks.size());
    case FitnessKind::kLeastExecuted: {
      double sum = 0;
      for (const auto& b : result.blocks) {
        sum += 1.0 / (1.0 + static_cast<double>(previous.BlockExecCount(b)));
      }
      return sum;
    }
    case FitnessKind::kLeastBranchHitCount: {
      double sum = 0;
      for (const auto& [e, hits] : result.branches) {
        uint64_t past = std::max<uint64_t>(1, previous.BranchHitCount(e));
        sum += std::ldexp(1.0, -Bucket(past));
      }
      return sum;
    }
  }
  return 0;
}

namespace {

void RequireScored(const Population& pop) {
  if (pop.individuals.empty()) {
    throw ContractViolation("selection from an empty population");
  }
  if (pop.fitness.size() != pop.individuals.size()) {
    throw ContractViolation("selection from an unscored population");
  }
}

// True if individual i beats individual j: higher fitness, ties to the
// lower id.
bool Fitter(const Population& pop, size_t i, size_t j) {
  if (pop.fitness[i] != pop.fitness[j]) return pop.fitness[i] > pop.fitness[j];
  return pop.individuals[i].id < pop.individuals[j].id;
}

// Indices from weakest to fittest.
std::vector<size_t> AscendingOrder(const Population& pop) {
  std::vector<size_t> order(pop.individuals.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&pop](size_t a, size_t b) { return Fitter(pop, b, a); });
  return order;
}

size_t Roulette(const std::vector<double>& weights, double total, Rng& rng) {
  double point = rng.Uniform() * total;
  for (size_t i = 0; i < weights.size(); ++i) {
    if (point < weights[i]) return i;
    point -= weights[i];
  }
  // Rounding left the point past the end; land on the last positive weight.
  for (size_t i = weights.size(); i-- > 0;) {
    if (weights[i] > 0) return i;
  }
  return weights.size() - 1;
}

double Choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

const Individual& SelectUniform(const Population& pop, Rng& rng) {
  if (pop.individuals.empty()) {
    throw ContractViolation("selection from an empty population");
  }
  return pop.individuals[rng.Below(pop.individuals.size())];
}

const Individual& Select(const Population& pop, SelectionKind kind, int tour,
                         Rng& rng) {
  RequireScored(pop);
  const size_t mu = pop.individuals.size();
  switch (kind) {
    case SelectionKind::kFitnessProportionate: {
      double total = std::accumulate(pop.fitness.begin(), pop.fitness.end(),
                                     0.0);
      if (total <= 0) return pop.individuals[rng.Below(mu)];
      return pop.individuals[Roulette(pop.fitness, total, rng)];
    }
    case SelectionKind::kRanking: {
      // Rank r (1 = weakest) is drawn with probability 2r / (mu (mu + 1)).
      std::vector<size_t> order = AscendingOrder(pop);
      uint64_t ticket = rng.Below(mu * (mu + 1) / 2);
      for (size_t r = 1; r <= mu; ++r) {
        if (ticket < r) return pop.individuals[order[r - 1]];
        ticket -= r;
      }
      return pop.individuals[order.back()];
    }
    case SelectionKind::kTournament: {
      const size_t k = std::min<size_t>(static_cast<size_t>(tour), mu);
      std::vector<size_t> pool(mu);
      std::iota(pool.begin(), pool.end(), 0);
      // Partial Fisher-Yates: the first k slots become the contestants.
      size_t best = 0;
      for (size_t i = 0; i < k; ++i) {
        size_t j = i + rng.Below(mu - i);
        std::swap(pool[i], pool[j]);
        if (i == 0 || Fitter(pop, pool[i], best)) best = pool[i];
      }
      return pop.individuals[best];
    }
  }
  throw ContractViolation("unknown selection kind");
}

std::vector<double> SelectionProbabilities(const Population& pop,
                                           SelectionKind kind, int tour) {
  RequireScored(pop);
  const size_t mu = pop.individuals.size();
  std::vector<double> p(mu, 0.0);
  switch (kind) {
    case SelectionKind::kFitnessProportionate: {
      double total = std::accumulate(pop.fitness.begin(), pop.fitness.end(),
                                     0.0);
      for (size_t i = 0; i < mu; ++i) {
        p[i] = total <= 0 ? 1.0 / static_cast<double>(mu)
                          : pop.fitness[i] / total;
      }
      break;
    }
    case SelectionKind::kRanking: {
      std::vector<size_t> order = AscendingOrder(pop);
      const double norm = static_cast<double>(mu * (mu + 1)) / 2;
      for (size_t r = 1; r <= mu; ++r) {
        p[order[r - 1]] = static_cast<double>(r) / norm;
      }
      break;
    }
    case SelectionKind::kTournament: {
      const int k = std::min(tour, static_cast<int>(mu));
      const int n = static_cast<int>(mu);
      std::vector<size_t> order = AscendingOrder(pop);
      const double all = Choose(n, k);
      for (int pos = 0; pos < n; ++pos) {
        // `better` individuals rank above order[pos]; it wins iff it is
        // drawn and none of them is.
        int better = n - 1 - pos;
        p[order[pos]] = Choose(n - 1 - better, k - 1) / all;
      }
      break;
    }
  }
  return p;
}

void UpdateTargetSizes(Community& community, int max_community_size) {
  auto& pops = community.populations;
  if (pops.empty()) return;
  std::vector<double> mean(pops.size());
  for (size_t i = 0; i < pops.size(); ++i) mean[i] = pops[i].MeanFitness();

  // Weakest first. Among equal means the higher method id counts as weaker,
  // so the best population is the lowest id among the top mean.
  std::vector<size_t> order(pops.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (mean[a] != mean[b]) return mean[a] < mean[b];
    return pops[a].method > pops[b].method;
  });

  const auto [lo, hi] = std::minmax_element(mean.begin(), mean.end());
  if (*lo != *hi) {
    const size_t best = order.back();
    ++pops[best].target_size;
    for (size_t idx : order) {
      if (idx != best && pops[idx].target_size > kMinTargetSize) {
        --pops[idx].target_size;
        break;
      }
    }
  }

  const int total = community.TotalTargetSize();
  if (total > max_community_size) {
    int budget = (total - max_community_size + 1) / 2;
    for (size_t idx : order) {
      if (budget == 0) break;
      int cut = std::min(budget, pops[idx].target_size - kMinTargetSize);
      pops[idx].target_size -= cut;
      budget -= cut;
    }
  }
}

void NextGeneration(Community& community, const CampaignConfig& config,
                    const Selector& select, const Crossoverer& crossover,
                    const Mutator& mutate, Rng& rng, IdSource& ids) {
  for (auto& pop : community.populations) {
    pop.offspring.clear();
    pop.offspring.reserve(static_cast<size_t>(pop.target_size));
    while (pop.offspring.size() < static_cast<size_t>(pop.target_size)) {
      Individual candidate = select(pop, rng);
      if (rng.Bernoulli(config.crossover_rate)) {
        const Individual& other = select(pop, rng);
        candidate = crossover(candidate, other, rng);
      }
      if (rng.Bernoulli(config.mutation_rate)) {
        candidate = mutate(candidate, rng);
      }
      candidate.id = ids.Next();
      pop.offspring.push_back(std::move(candidate));
    }
    pop.individuals = std::move(pop.offspring);
    pop.offspring.clear();
    pop.fitness.clear();
  }
}

}  // namespace evofuzz
