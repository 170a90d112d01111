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

// Brute-force reference implementations the statistics code is checked
// against. They share nothing with the library beyond the C++ standard
// library.

#ifndef EVOFUZZ_TESTS_ORACLES_H_
#define EVOFUZZ_TESTS_ORACLES_H_

#include <cmath>
#include <cstdint>
#include <vector>

namespace evofuzz::oracle {

// Pair-counting U: pairs with a > b plus half the ties.
inline double PairU(const std::vector<double>& a, const std::vector<double>& b) {
  double u = 0;
  for (double x : a) {
    for (double y : b) u += x > y ? 1.0 : (x == y ? 0.5 : 0.0);
  }
  return u;
}

inline double PairA12(const std::vector<double>& a,
                      const std::vector<double>& b) {
  return PairU(a, b) / (static_cast<double>(a.size()) * b.size());
}

// Two-sided exact permutation p-value of U: the share of all relabelings of
// the pooled sample whose |U - mn/2| is at least the observed one.
inline double ExactPermutationP(const std::vector<double>& a,
                                const std::vector<double>& b) {
  std::vector<double> pooled(a);
  pooled.insert(pooled.end(), b.begin(), b.end());
  const size_t m = a.size(), total = pooled.size();
  const double center = m * b.size() / 2.0;
  const double observed = std::abs(PairU(a, b) - center);
  uint64_t hits = 0, count = 0;
  for (uint32_t mask = 0; mask < (1u << total); ++mask) {
    if (static_cast<size_t>(__builtin_popcount(mask)) != m) continue;
    std::vector<double> x, y;
    for (size_t i = 0; i < total; ++i) {
      ((mask >> i) & 1 ? x : y).push_back(pooled[i]);
    }
    ++count;
    if (std::abs(PairU(x, y) - center) >= observed - 1e-9) ++hits;
  }
  return static_cast<double>(hits) / count;
}

// Exact null distribution of U for tie-free samples of sizes m and n:
// counts[u] = number of arrangements with U = u.
inline std::vector<uint64_t> ExactUDistribution(int m, int n) {
  std::vector<uint64_t> counts(m * n + 1, 0);
  const int total = m + n;
  for (uint32_t mask = 0; mask < (1u << total); ++mask) {
    if (__builtin_popcount(mask) != m) continue;
    // Members of the first sample occupy the set bits of the sorted pool;
    // each of them beats every second-sample member ranked below it.
    int u = 0, seen_b = 0;
    for (int i = 0; i < total; ++i) {
      if ((mask >> i) & 1) {
        u += seen_b;
      } else {
        ++seen_b;
      }
    }
    ++counts[u];
  }
  return counts;
}

}  // namespace evofuzz::oracle

#endif  // EVOFUZZ_TESTS_ORACLES_H_
