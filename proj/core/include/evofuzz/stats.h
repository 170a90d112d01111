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

#ifndef EVOFUZZ_STATS_H_
#define EVOFUZZ_STATS_H_

#include <span>
#include <string>
#include <vector>

namespace evofuzz {

struct SampleGroup {
  std::string label;
  std::vector<double> values;
};

double Mean(std::span<const double> xs);
// Sample standard deviation (n - 1); 0 for fewer than two values.
double StdDev(std::span<const double> xs);
double Median(std::span<const double> xs);

// Ranks of `xs` (1-based) with ties given their average rank.
std::vector<double> MidRanks(std::span<const double> xs);

struct MannWhitneyReport {
  double u = 0;   // U of the first sample
  double z = 0;
  double p = 1;   // two-sided
  double a12 = 0.5;
};

// Two-sample normal approximation with tie-corrected variance. The 0.5
// continuity correction shrinks |U - mn/2| towards zero.
MannWhitneyReport MannWhitney(std::span<const double> a,
                              std::span<const double> b,
                              bool continuity_correction = true);

// Probability that a value drawn from `a` exceeds one drawn from `b`, ties
// counting one half.
double VarghaDelaney(std::span<const double> a, std::span<const double> b);

struct KruskalWallisReport {
  double h = 0;
  int df = 0;
  double p = 1;
};

// Throws ValidationError for fewer than two groups or an empty group.
KruskalWallisReport KruskalWallis(std::span<const SampleGroup> groups);

struct RankEntry {
  std::string label;
  int score = 0;  // significant wins minus significant losses
  int rank = 0;   // competition ranking: ties share the better rank
  double mean = 0;
};

std::vector<RankEntry> RankConfigurations(std::span<const SampleGroup> groups,
                                          double alpha = 0.05);

struct CoverageGain {
  double evo_mean = 0;
  double bb_mean = 0;
  bool infinite = false;  // bb_mean == 0 and evo_mean > 0
  double ratio = 1;       // meaningful unless infinite

  std::string ToString() const;
};

CoverageGain ComputeCoverageGain(std::span<const double> evo,
                                 std::span<const double> bb);

}  // namespace evofuzz

#endif  // EVOFUZZ_STATS_H_
