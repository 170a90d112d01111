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

#include "evofuzz/stats.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include <boost/math/special_functions/gamma.hpp>

#include "evofuzz/errors.h"

namespace evofuzz {

double Mean(std::span<const double> xs) {
  if (xs.empty()) return 0;
  return std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
}

double StdDev(std::span<const double> xs) {
  if (xs.size() < 2) return 0;
  const double m = Mean(xs);
  double ss = 0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / (xs.size() - 1));
}

double Median(std::span<const double> xs) {
  if (xs.empty()) return 0;
  std::vector<double> v(xs.begin(), xs.end());
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

std::vector<double> MidRanks(std::span<const double> xs) {
  std::vector<size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](size_t i, size_t j) { return xs[i] < xs[j]; });
  std::vector<double> ranks(xs.size());
  for (size_t i = 0; i < order.size();) {
    size_t j = i;
    while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) ++j;
    // Positions i..j (0-based) share ranks i+1..j+1.
    const double r = (i + j + 2) / 2.0;
    for (size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

namespace {

struct Pooled {
  std::vector<double> ranks;
  double tie_term = 0;  // sum over tie groups of t^3 - t
};

Pooled RankPooled(std::span<const std::span<const double>> samples) {
  std::vector<double> all;
  for (auto s : samples) all.insert(all.end(), s.begin(), s.end());
  Pooled out;
  out.ranks = MidRanks(all);
  std::sort(all.begin(), all.end());
  for (size_t i = 0; i < all.size();) {
    size_t j = i;
    while (j < all.size() && all[j] == all[i]) ++j;
    const double t = j - i;
    out.tie_term += t * t * t - t;
    i = j;
  }
  return out;
}

double RankSumOfFirst(std::span<const double> a, std::span<const double> b,
                      double* tie_term) {
  const std::span<const double> parts[] = {a, b};
  Pooled pooled = RankPooled(parts);
  if (tie_term != nullptr) *tie_term = pooled.tie_term;
  return std::accumulate(pooled.ranks.begin(), pooled.ranks.begin() + a.size(),
                         0.0);
}

void RequireNonEmpty(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) {
    throw ValidationError("rank test needs two nonempty samples");
  }
}

}  // namespace

double VarghaDelaney(std::span<const double> a, std::span<const double> b) {
  RequireNonEmpty(a, b);
  const double m = a.size(), n = b.size();
  const double r1 = RankSumOfFirst(a, b, nullptr);
  // (R1/m - (m+1)/2)/n, rearranged so half-integer rank sums stay exact.
  return (r1 - m * (m + 1) / 2) / (m * n);
}

MannWhitneyReport MannWhitney(std::span<const double> a,
                              std::span<const double> b,
                              bool continuity_correction) {
  RequireNonEmpty(a, b);
  const double m = a.size(), n = b.size(), total = m + n;
  double tie_term = 0;
  const double r1 = RankSumOfFirst(a, b, &tie_term);

  MannWhitneyReport out;
  out.u = r1 - m * (m + 1) / 2;
  out.a12 = out.u / (m * n);
  const double variance =
      m * n / 12 * ((total + 1) - tie_term / (total * (total - 1)));
  if (!(variance > 0)) return out;  // every value identical

  double diff = out.u - m * n / 2;
  if (continuity_correction) {
    diff = std::copysign(std::max(0.0, std::abs(diff) - 0.5), diff);
  }
  out.z = diff / std::sqrt(variance);
  out.p = std::min(1.0, std::erfc(std::abs(out.z) / std::sqrt(2.0)));
  return out;
}

KruskalWallisReport KruskalWallis(std::span<const SampleGroup> groups) {
  if (groups.size() < 2) {
    throw ValidationError("Kruskal-Wallis needs at least two groups");
  }
  std::vector<std::span<const double>> parts;
  for (const auto& g : groups) {
    if (g.values.empty()) {
      throw ValidationError("group '" + g.label + "' is empty");
    }
    parts.emplace_back(g.values);
  }
  Pooled pooled = RankPooled(parts);
  const double total = pooled.ranks.size();

  KruskalWallisReport out;
  out.df = static_cast<int>(groups.size()) - 1;
  const double correction =
      1 - pooled.tie_term / (total * total * total - total);
  if (!(correction > 0)) return out;

  double h = 0;
  size_t offset = 0;
  for (const auto& g : groups) {
    const double ni = g.values.size();
    double sum = 0;
    for (size_t k = 0; k < g.values.size(); ++k) sum += pooled.ranks[offset + k];
    offset += g.values.size();
    const double dev = sum / ni - (total + 1) / 2;
    h += ni * dev * dev;
  }
  out.h = 12 / (total * (total + 1)) * h / correction;
  out.p = out.h > 0 ? boost::math::gamma_q(out.df / 2.0, out.h / 2) : 1.0;
  return out;
}

std::vector<RankEntry> RankConfigurations(std::span<const SampleGroup> groups,
                                          double alpha) {
  std::vector<RankEntry> out;
  for (const auto& g : groups) out.push_back({g.label, 0, 0, Mean(g.values)});
  for (size_t i = 0; i < groups.size(); ++i) {
    for (size_t j = i + 1; j < groups.size(); ++j) {
      const MannWhitneyReport r =
          MannWhitney(groups[i].values, groups[j].values);
      if (r.p >= alpha || r.a12 == 0.5) continue;
      const bool i_better = r.a12 > 0.5;
      out[i].score += i_better ? 1 : -1;
      out[j].score += i_better ? -1 : 1;
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const RankEntry& x, const RankEntry& y) {
                     return x.score > y.score;
                   });
  for (size_t i = 0; i < out.size(); ++i) {
    out[i].rank = (i > 0 && out[i].score == out[i - 1].score)
                      ? out[i - 1].rank
                      : static_cast<int>(i) + 1;
  }
  return out;
}

CoverageGain ComputeCoverageGain(std::span<const double> evo,
                                 std::span<const double> bb) {
  CoverageGain g;
  g.evo_mean = Mean(evo);
  g.bb_mean = Mean(bb);
  if (g.bb_mean > 0) {
    g.ratio = g.evo_mean / g.bb_mean;
  } else if (g.evo_mean > 0) {
    g.infinite = true;
  }
  return g;
}

std::string CoverageGain::ToString() const {
  char buf[96];
  if (infinite) {
    std::snprintf(buf, sizeof(buf), "∞ (%.2f / %.2f)", evo_mean, bb_mean);
  } else {
    std::snprintf(buf, sizeof(buf), "%.2f", ratio);
  }
  return buf;
}

}  // namespace evofuzz
