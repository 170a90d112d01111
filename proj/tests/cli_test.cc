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

#include <fstream>
#include <sstream>

#include "cli.h"
#include "gtest/gtest.h"
#include "nlohmann/json.hpp"
#include "test_util.h"

namespace evofuzz {
namespace {

using nlohmann::json;
using testing_util::TempDir;
using testing_util::TestData;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun Invoke(std::vector<std::string> args) {
  std::istringstream in;
  std::ostringstream out, err;
  int code = RunCli(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string Slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(CliTest, HelpListsDefaults) {
  CliRun r = Invoke({"fuzz", "--help"});
  EXPECT_EQ(r.code, 0);
  for (const char* s : {"--population-initial-target-size INT [10]",
                        "--generations INT [20]", "--max-community-size INT [200]",
                        "--cross-over-rate FLOAT [0.8]",
                        "--mutation-rate FLOAT [0.05]", "--tour INT [5]"}) {
    EXPECT_NE(r.out.find(s), std::string::npos) << s;
  }
  CliRun top = Invoke({"--help"});
  EXPECT_EQ(top.code, 0);
  EXPECT_NE(top.out.find("max-community-size 200"), std::string::npos);
}

TEST(CliTest, FuzzWritesOneFilePerGeneration) {
  const auto dir = TempDir("cli-fuzz");
  CliRun r = Invoke({"fuzz", "--target", TestData("magic.json").string(), "--seed",
                  "1", "--generations", "20", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  for (int g = 0; g < 20; ++g) {
    char name[32];
    std::snprintf(name, sizeof(name), "gen-%04d.jsonl", g);
    EXPECT_TRUE(std::filesystem::exists(dir / name)) << name;
  }
  EXPECT_FALSE(std::filesystem::exists(dir / "gen-0020.jsonl"));
  json config = json::parse(Slurp(dir / "config.json"));
  EXPECT_EQ(config["population-initial-target-size"], 10);
  EXPECT_EQ(config["max-community-size"], 200);
  EXPECT_EQ(config["cross-over-rate"], 0.8);
  EXPECT_EQ(config["mutation-rate"], 0.05);
  EXPECT_EQ(config["tour"], 5);
  EXPECT_EQ(config["stop-condition"]["generation-limit"], 20);
}

TEST(CliTest, BlackBoxRecordsCarryNoFitness) {
  const auto dir = TempDir("cli-bb");
  CliRun r = Invoke({"fuzz", "--target", TestData("magic.json").string(),
                  "--blackbox", "--generations", "3", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(Slurp(dir / "gen-0002.jsonl"));
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    EXPECT_EQ(json::parse(line).count("fitness"), 0u);
    ++n;
  }
  EXPECT_EQ(n, 20);
  CliRun replay = Invoke({"replay", "--campaign", dir.string()});
  ASSERT_EQ(replay.code, 0) << replay.err;
  json curve = json::parse(Slurp(dir / "coverage.json"));
  EXPECT_EQ(curve["curve"].size(), 3u);
  EXPECT_GT(curve["distinct_blocks"].get<int>(), 0);
}

TEST(CliTest, SameSeedGivesIdenticalFiles) {
  const auto a = TempDir("cli-det-a"), b = TempDir("cli-det-b");
  for (const auto& dir : {a, b}) {
    ASSERT_EQ(Invoke({"fuzz", "--target", TestData("magic.json").string(),
                   "--seed", "5", "--generations", "6", "--out", dir.string()})
                  .code,
              0);
  }
  for (int g = 0; g < 6; ++g) {
    char name[32];
    std::snprintf(name, sizeof(name), "gen-%04d.jsonl", g);
    EXPECT_EQ(Slurp(a / name), Slurp(b / name)) << name;
  }
}

TEST(CliTest, GenTargetIsDeterministicAndLoadable) {
  CliRun a = Invoke({"gen-target", "gate-chain", "--depth", "8", "--seed", "7"});
  CliRun b = Invoke({"gen-target", "gate-chain", "--depth", "8", "--seed", "7"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto dir = TempDir("cli-gen");
  ASSERT_EQ(Invoke({"gen-target", "shared-core", "--methods", "11", "--core-depth",
                 "8", "--out", (dir / "t.json").string()})
                .code,
            0);
  json doc = json::parse(Slurp(dir / "t.json"));
  EXPECT_EQ(doc["methods"].size(), 11u);
  EXPECT_EQ(Invoke({"fuzz", "--target", (dir / "t.json").string(), "--generations",
                 "2", "--out", (dir / "c").string()})
                .code,
            0);
}

TEST(CliTest, ExitCodes) {
  EXPECT_EQ(Invoke({"fuzz", "--target", "/nonexistent/t.json"}).code, 2);
  CliRun invalid = Invoke({"fuzz", "--target", TestData("cycle.json").string()});
  EXPECT_EQ(invalid.code, 1);
  EXPECT_NE(invalid.err.find("cycle"), std::string::npos);
  EXPECT_EQ(Invoke({"fuzz", "--target", TestData("magic.json").string(), "--tour",
                 "0"}).code, 1);
  EXPECT_EQ(Invoke({"fuzz", "--bogus"}).code, 1);
  EXPECT_EQ(Invoke({"fuzz", "--target", TestData("magic.json").string(),
                 "--generations", "3", "--test-limit", "5"}).code, 1);
  EXPECT_EQ(Invoke({"replay", "--campaign", "/nonexistent/dir"}).code, 2);
  EXPECT_EQ(Invoke({}).code, 1);
}

TEST(CliTest, CompareDegenerateRepsGiveEqualEffect) {
  const auto dir = TempDir("cli-compare");
  CliRun r = Invoke({"compare", "--target", TestData("minimal.json").string(),
                  "--reps", "2", "--generations", "3", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  json report = json::parse(Slurp(dir / "report.json"));
  EXPECT_EQ(report["mann_whitney"]["A12"], 0.5);
  EXPECT_EQ(report["gain"]["ratio"], 1.0);
  EXPECT_TRUE(std::filesystem::exists(dir / "report.txt"));
  EXPECT_NE(r.out.find("A12"), std::string::npos);
  EXPECT_EQ(Invoke({"compare", "--target", TestData("minimal.json").string(),
                 "--reps", "1"}).code, 1);
}

TEST(CliTest, CompareWithSlowdownGivesBlackBoxMoreTests) {
  const auto dir = TempDir("cli-slowdown");
  CliRun r = Invoke({"compare", "--target", TestData("magic.json").string(),
                  "--reps", "2", "--generations", "2", "--slowdown", "13.91",
                  "--jobs", "2", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  json report = json::parse(Slurp(dir / "report.json"));
  EXPECT_EQ(report["repetitions"]["EVO"][0]["tests"], 40);
  EXPECT_EQ(report["repetitions"]["BB"][0]["tests"], 557);  // ceil(40 * 13.91)
}

TEST(CliTest, RankFitnessOnly) {
  const auto dir = TempDir("cli-rank");
  CliRun r = Invoke({"rank", "--target", TestData("magic.json").string(), "--reps",
                  "3", "--generations", "3", "--fitness-only", "--out",
                  dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  json report = json::parse(Slurp(dir / "report.json"));
  EXPECT_EQ(report["ranking"].size(), 3u);
  EXPECT_TRUE(report.contains("kruskal_wallis_fitness"));
  EXPECT_FALSE(report.contains("kruskal_wallis_selection"));
  int total = 0;
  for (const auto& row : report["ranking"]) total += row["score"].get<int>();
  EXPECT_EQ(total, 0);
}

}  // namespace
}  // namespace evofuzz
