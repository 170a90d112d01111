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

#include <memory>
#include <vector>

#include "benchmark/benchmark.h"
#include "evofuzz/campaign.h"
#include "evofuzz/genome.h"
#include "evofuzz/stats.h"
#include "evofuzz/synthetic.h"
#include "evofuzz/target_families.h"

namespace evofuzz {
namespace {

std::shared_ptr<const SyntheticService> SharedCore() {
  Rng rng(7);
  static const auto service = std::make_shared<const SyntheticService>(
      SyntheticService::FromJson(GenerateBenchmark(SharedCoreFamily{}, rng)));
  return service;
}

MethodSignature WideSignature() {
  ValueType creds = ValueType::Object(
      "Creds", {{"user", ValueType::String()}, {"pin", ValueType::Short()}});
  return {0, "login",
          {ValueType::String(), creds, ValueType::Array(ValueType::Integer()),
           ValueType::Double()}};
}

void BM_Mutate(benchmark::State& state) {
  const MethodSignature sig = WideSignature();
  Rng rng(1);
  IdSource ids;
  Individual ind = RandomIndividual(sig, rng, ids);
  for (auto _ : state) {
    Individual next = MutateIndividual(ind, rng, ids);
    benchmark::DoNotOptimize(next);
  }
}
BENCHMARK(BM_Mutate);

void BM_Crossover(benchmark::State& state) {
  const MethodSignature sig = WideSignature();
  Rng rng(2);
  IdSource ids;
  const Individual a = RandomIndividual(sig, rng, ids);
  const Individual b = RandomIndividual(sig, rng, ids);
  for (auto _ : state) {
    Individual child = Crossover(a, b, rng, ids);
    benchmark::DoNotOptimize(child);
  }
}
BENCHMARK(BM_Crossover);

void BM_ExecuteSynthetic(benchmark::State& state) {
  SyntheticHarness harness(SharedCore());
  Rng rng(3);
  IdSource ids;
  std::vector<Call> calls;
  for (const auto& sig : harness.descriptor().methods) {
    calls.push_back(Call::Of(RandomIndividual(sig, rng, ids)));
  }
  size_t i = 0;
  for (auto _ : state) {
    ExecutionResult r = harness.Execute(calls[i++ % calls.size()], true);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_ExecuteSynthetic);

void BM_CampaignGenerations(benchmark::State& state) {
  SyntheticHarness harness(SharedCore());
  CampaignConfig config;
  config.stop = GenerationLimit{static_cast<int>(state.range(0))};
  uint64_t tests = 0;
  for (auto _ : state) {
    CampaignState s = RunCampaign(harness, config);
    tests += s.tests_executed;
  }
  state.counters["tests/s"] =
      benchmark::Counter(static_cast<double>(tests), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_CampaignGenerations)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_MannWhitney(benchmark::State& state) {
  Rng rng(4);
  std::vector<double> a(state.range(0)), b(state.range(0));
  for (auto& x : a) x = static_cast<double>(rng.Below(50));
  for (auto& x : b) x = static_cast<double>(rng.Below(50));
  for (auto _ : state) {
    MannWhitneyReport r = MannWhitney(a, b);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_MannWhitney)->Arg(10)->Arg(1000);

}  // namespace
}  // namespace evofuzz

BENCHMARK_MAIN();
