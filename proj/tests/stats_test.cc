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

#include <cmath>

#include "evofuzz/errors.h"
#include "evofuzz/rng.h"
#include "evofuzz/stats.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace evofuzz {
namespace {

using V = std::vector<double>;

TEST(MannWhitneyTest, WorkedExampleWithoutContinuityCorrection) {
  MannWhitneyReport r = MannWhitney(V{1, 2, 3}, V{4, 5, 6}, false);
  EXPECT_EQ(r.u, 0);
  EXPECT_NEAR(r.z, -1.964, 5e-4);
  EXPECT_NEAR(r.p, 0.0495, 5e-4);
  EXPECT_EQ(r.a12, 0);
  // The exact permutation p for this arrangement is 2/20.
  EXPECT_DOUBLE_EQ(oracle::ExactPermutationP({1, 2, 3}, {4, 5, 6}), 0.1);
}

TEST(MannWhitneyTest, ContinuityCorrectionShrinksZ) {
  MannWhitneyReport r = MannWhitney(V{1, 2, 3}, V{4, 5, 6});
  EXPECT_NEAR(r.z, -4.0 / std::sqrt(5.25), 1e-12);
  EXPECT_GT(r.p, 0.0495);
}

TEST(MannWhitneyTest, IdenticalSamples) {
  MannWhitneyReport r = MannWhitney(V{3, 1, 2}, V{3, 1, 2});
  EXPECT_EQ(r.u, 4.5);
  EXPECT_EQ(r.p, 1);
  EXPECT_EQ(r.a12, 0.5);
  MannWhitneyReport flat = MannWhitney(V{7, 7}, V{7, 7, 7});
  EXPECT_EQ(flat.p, 1);
  EXPECT_EQ(flat.a12, 0.5);
}

TEST(MannWhitneyTest, RejectsEmptySamples) {
  EXPECT_THROW(MannWhitney(V{}, V{1}), ValidationError);
}

TEST(MannWhitneyTest, AgreesWithPairCountingUnderTies) {
  Rng rng(1);
  for (int trial = 0; trial < 500; ++trial) {
    V a(1 + rng.Below(7)), b(1 + rng.Below(7));
    for (auto& x : a) x = static_cast<double>(rng.Below(4));
    for (auto& x : b) x = static_cast<double>(rng.Below(4));
    EXPECT_EQ(MannWhitney(a, b).u, oracle::PairU(a, b));
    EXPECT_EQ(VarghaDelaney(a, b), oracle::PairA12(a, b));
    EXPECT_EQ(VarghaDelaney(a, b) + VarghaDelaney(b, a), 1.0);
  }
}

TEST(MannWhitneyTest, InvariantUnderMonotoneTransforms) {
  Rng rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    V a(5), b(6);
    for (auto& x : a) x = rng.Uniform() * 10;
    for (auto& x : b) x = rng.Uniform() * 10;
    V ta = a, tb = b;
    for (auto& x : ta) x = std::exp(x) + 3;
    for (auto& x : tb) x = std::exp(x) + 3;
    EXPECT_DOUBLE_EQ(MannWhitney(a, b).p, MannWhitney(ta, tb).p);
  }
}

TEST(VarghaDelaneyTest, Extremes) {
  EXPECT_EQ(VarghaDelaney(V{1, 2, 3}, V{4, 5, 6}), 0.0);
  EXPECT_EQ(VarghaDelaney(V{4, 5, 6}, V{1, 2, 3}), 1.0);
  EXPECT_EQ(VarghaDelaney(V{2, 2}, V{2, 2}), 0.5);
}

TEST(KruskalWallisTest, WorkedExample) {
  std::vector<SampleGroup> g = {{"a", {1, 2, 3}}, {"b", {4, 5, 6}}, {"c", {7, 8, 9}}};
  KruskalWallisReport r = KruskalWallis(g);
  EXPECT_DOUBLE_EQ(r.h, 7.2);
  EXPECT_EQ(r.df, 2);
  EXPECT_NEAR(r.p, std::exp(-3.6), 1e-12);  // chi-square(2) tail
  EXPECT_NEAR(r.p, 0.0273, 5e-4);
}

TEST(KruskalWallisTest, IdenticalGroups) {
  std::vector<SampleGroup> g = {{"a", {1, 2, 3}}, {"b", {1, 2, 3}}};
  EXPECT_EQ(KruskalWallis(g).h, 0);
  EXPECT_EQ(KruskalWallis(g).p, 1);
  std::vector<SampleGroup> flat = {{"a", {4, 4}}, {"b", {4}}};
  EXPECT_EQ(KruskalWallis(flat).p, 1);
}

TEST(KruskalWallisTest, TwoGroupsMatchUncorrectedMannWhitney) {
  // With two groups H equals z^2 of the uncorrected normal approximation.
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    V a(2 + rng.Below(6)), b(2 + rng.Below(6));
    for (auto& x : a) x = static_cast<double>(rng.Below(6));
    for (auto& x : b) x = static_cast<double>(rng.Below(6));
    MannWhitneyReport mw = MannWhitney(a, b, false);
    std::vector<SampleGroup> g = {{"a", a}, {"b", b}};
    KruskalWallisReport kw = KruskalWallis(g);
    EXPECT_NEAR(kw.h, mw.z * mw.z, 1e-9);
    EXPECT_NEAR(kw.p, mw.p, 1e-9);
  }
}

TEST(KruskalWallisTest, RejectsDegenerateInput) {
  std::vector<SampleGroup> one = {{"a", {1}}};
  EXPECT_THROW(KruskalWallis(one), ValidationError);
  std::vector<SampleGroup> empty = {{"a", {1}}, {"b", {}}};
  EXPECT_THROW(KruskalWallis(empty), ValidationError);
}

TEST(RankConfigurationsTest, WinsMinusLosses) {
  std::vector<SampleGroup> g = {
      {"A", {20, 21, 22, 23, 24, 25, 26, 27, 28, 29}},
      {"B", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}},
      {"C", {1.5, 2.5, 3.5, 4.5, 5.5, 6.5, 7.5, 8.5, 9.5, 10.5}}};
  auto ranking = RankConfigurations(g);
  ASSERT_EQ(ranking.size(), 3u);
  EXPECT_EQ(ranking[0].label, "A");
  EXPECT_EQ(ranking[0].score, 2);
  EXPECT_EQ(ranking[0].rank, 1);
  EXPECT_EQ(ranking[1].score, -1);
  EXPECT_EQ(ranking[2].score, -1);
  EXPECT_EQ(ranking[1].rank, 2);
  EXPECT_EQ(ranking[2].rank, 2);
}

TEST(RankConfigurationsTest, NothingSignificant) {
  std::vector<SampleGroup> g = {{"A", {1, 2}}, {"B", {2, 1}}, {"C", {1, 2}}};
  for (const auto& e : RankConfigurations(g)) {
    EXPECT_EQ(e.score, 0);
    EXPECT_EQ(e.rank, 1);
  }
}

TEST(RankConfigurationsTest, ScoresSumToZeroAndRanksCompete) {
  Rng rng(4);
  std::vector<SampleGroup> g;
  for (int i = 0; i < 9; ++i) {
    SampleGroup s{"c" + std::to_string(i), {}};
    for (int k = 0; k < 10; ++k) s.values.push_back(i / 3 * 5 + rng.Uniform());
    g.push_back(s);
  }
  auto ranking = RankConfigurations(g);
  int total = 0;
  for (size_t i = 0; i < ranking.size(); ++i) {
    total += ranking[i].score;
    if (i > 0) {
      EXPECT_LE(ranking[i].score, ranking[i - 1].score);
      if (ranking[i].score == ranking[i - 1].score) {
        EXPECT_EQ(ranking[i].rank, ranking[i - 1].rank);
      } else {
        EXPECT_EQ(ranking[i].rank, static_cast<int>(i) + 1);
      }
    }
  }
  EXPECT_EQ(total, 0);
}

TEST(CoverageGainTest, RatioAndSentinel) {
  EXPECT_DOUBLE_EQ(ComputeCoverageGain(V{4, 4}, V{2, 2}).ratio, 2.0);
  EXPECT_DOUBLE_EQ(ComputeCoverageGain(V{3, 5}, V{3, 5}).ratio, 1.0);
  CoverageGain inf = ComputeCoverageGain(V{4}, V{0, 0});
  EXPECT_TRUE(inf.infinite);
  EXPECT_EQ(inf.evo_mean, 4);
  EXPECT_NE(inf.ToString().find("∞"), std::string::npos);
}

TEST(DescriptiveTest, MeanSdMedian) {
  EXPECT_DOUBLE_EQ(Mean(V{1, 2, 3, 4}), 2.5);
  EXPECT_DOUBLE_EQ(Median(V{4, 1, 3, 2}), 2.5);
  EXPECT_DOUBLE_EQ(Median(V{5, 1, 3}), 3);
  EXPECT_NEAR(StdDev(V{2, 4, 4, 4, 5, 5, 7, 9}), 2.138089935, 1e-9);
  EXPECT_EQ(MidRanks(V{10, 20, 10, 30}), (V{1.5, 3, 1.5, 4}));
}

}  // namespace
}  // namespace evofuzz
