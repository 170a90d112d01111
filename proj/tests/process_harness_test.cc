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

#include <sstream>

#include "evofuzz/codec.h"
#include "evofuzz/genome.h"
#include "evofuzz/process_harness.h"
#include "evofuzz/synthetic.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace evofuzz {
namespace {

using nlohmann::json;
using testing_util::TestData;

ServiceDescriptor OneMethod() {
  return {"ext", {{0, "f", {ValueType::Integer()}}}};
}

Call IntCall(int64_t v) { return {0, {Value::Integral(TypeTag::kInteger, v)}}; }

TEST(ProcessHarnessTest, TalksToAnExternalTarget) {
  ProcessHarness h(OneMethod(), TestData("echo_target.sh").string());
  for (int i = 0; i < 3; ++i) {
    ExecutionResult r = h.Execute(IntCall(i), true);
    EXPECT_EQ(r.outcome, Outcome::kNormal);
    EXPECT_EQ(r.blocks, std::vector<std::string>{"x0"});
  }
  EXPECT_FALSE(h.Execute(IntCall(1), false).has_coverage());
  EXPECT_EQ(h.restarts(), 0);
}

TEST(ProcessHarnessTest, TimeoutIsACrashAndTheTargetRestarts) {
  ProcessHarness h(OneMethod(), TestData("hang_target.sh").string(),
                   std::chrono::milliseconds(150));
  ExecutionResult r = h.Execute(IntCall(1), true);
  EXPECT_EQ(r.outcome, Outcome::kCrash);
  EXPECT_NE(r.log.find("150 ms"), std::string::npos);
  h.Execute(IntCall(2), true);
  EXPECT_EQ(h.restarts(), 1);
}

TEST(ProcessHarnessTest, DeadTargetIsACrash) {
  ProcessHarness h(OneMethod(), "exit 0");
  ExecutionResult r = h.Execute(IntCall(1), true);
  EXPECT_EQ(r.outcome, Outcome::kCrash);
}

TEST(ProcessHarnessTest, GarbageResponseIsACrash) {
  ProcessHarness h(OneMethod(), "while read l; do echo nonsense; done");
  EXPECT_EQ(h.Execute(IntCall(1), true).outcome, Outcome::kCrash);
}

TEST(ServeWireProtocolTest, AnswersLikeTheInProcessHarness) {
  auto svc = std::make_shared<const SyntheticService>(
      LoadTarget(TestData("magic.json")));
  SyntheticHarness h(svc);
  Rng rng(1);
  IdSource ids;
  std::vector<Individual> tests;
  std::ostringstream requests;
  for (int i = 0; i < 50; ++i) {
    const auto& sig = svc->descriptor().methods[i % 2];
    tests.push_back(RandomIndividual(sig, rng, ids));
    requests << EncodeRequest(sig, tests.back().inputs).dump() << "\n";
  }
  requests << "{\"method\": \"nope\", \"args\": []}\n";
  std::istringstream in(requests.str());
  std::ostringstream out;
  ServeWireProtocol(in, out, h);

  std::istringstream lines(out.str());
  std::string line;
  for (const auto& t : tests) {
    ASSERT_TRUE(std::getline(lines, line));
    ExecutionResult got = DecodeResponse(json::parse(line));
    ExecutionResult want = h.Execute(Call::Of(t), true);
    EXPECT_EQ(got.blocks, want.blocks);
    EXPECT_EQ(got.branches, want.branches);
    EXPECT_EQ(got.outcome, want.outcome);
  }
  ASSERT_TRUE(std::getline(lines, line));
  ExecutionResult bad = DecodeResponse(json::parse(line));
  EXPECT_EQ(bad.outcome, Outcome::kCrash);
  EXPECT_NE(bad.log.find("unknown method"), std::string::npos);
}

TEST(ProcessHarnessTest, DrivesTheServeSubcommand) {
  auto svc = std::make_shared<const SyntheticService>(
      LoadTarget(TestData("magic.json")));
  SyntheticHarness local(svc);
  ProcessHarness remote(svc->descriptor(),
                        std::string(EVOFUZZ_CLI_PATH) + " serve --target " +
                            TestData("magic.json").string());
  Rng rng(2);
  IdSource ids;
  for (int i = 0; i < 40; ++i) {
    Individual t = RandomIndividual(svc->descriptor().methods[i % 2], rng, ids);
    ExecutionResult a = local.Execute(Call::Of(t), true);
    ExecutionResult b = remote.Execute(Call::Of(t), true);
    EXPECT_EQ(a.blocks, b.blocks);
    EXPECT_EQ(a.outcome, b.outcome);
  }
}

}  // namespace
}  // namespace evofuzz
