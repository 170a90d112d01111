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

#ifndef EVOFUZZ_COVERAGE_H_
#define EVOFUZZ_COVERAGE_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace evofuzz {

enum class Outcome : uint8_t { kNormal, kHandledException, kCrash };

// "ok" | "exception" | "crash".
std::string_view OutcomeName(Outcome o);
// Throws ValidationError on unknown names.
Outcome ParseOutcome(std::string_view name);

using BlockId = std::string;
using BranchId = std::string;

// Coverage and outcome of a single test execution.
struct ExecutionResult {
  std::vector<BlockId> blocks;                 // sorted, unique
  std::map<BranchId, uint32_t> branches;       // hits per execution, >= 1
  Outcome outcome = Outcome::kNormal;
  std::string log;
  double duration_ms = 0;

  bool has_coverage() const { return !blocks.empty() || !branches.empty(); }
  // Sorts and dedups `blocks`.
  void Normalize();
};

// Cumulative coverage counters over every test executed so far in one
// campaign. Every read goes through an accessor that marks the state as
// touched, so tests can assert that black-box runs never consult it.
class GlobalCoverageState {
 public:
  // Number of past executions that covered the block.
  uint64_t BlockExecCount(std::string_view block) const;
  // Cumulative hits of the branch across all past executions.
  uint64_t BranchHitCount(std::string_view branch) const;
  uint64_t tests_executed() const {
    touched_ = true;
    return tests_executed_;
  }
  size_t distinct_blocks() const {
    touched_ = true;
    return blocks_.size();
  }
  size_t distinct_branches() const {
    touched_ = true;
    return branches_.size();
  }

  void Update(const ExecutionResult& result);

  bool touched() const { return touched_; }

 private:
  struct Hash {
    using is_transparent = void;
    size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };
  using Counts =
      std::unordered_map<std::string, uint64_t, Hash, std::equal_to<>>;

  Counts blocks_;
  Counts branches_;
  uint64_t tests_executed_ = 0;
  mutable bool touched_ = false;
};

}  // namespace evofuzz

#endif  // EVOFUZZ_COVERAGE_H_
