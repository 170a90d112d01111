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

#include "evofuzz/coverage.h"

#include <algorithm>

#include "evofuzz/errors.h"

namespace evofuzz {

std::string_view OutcomeName(Outcome o) {
  switch (o) {
    case Outcome::kNormal: return "ok";
    case Outcome::kHandledException: return "exception";
    case Outcome::kCrash: return "crash";
  }
  return "?";
}

Outcome ParseOutcome(std::string_view name) {
  if (name == "ok") return Outcome::kNormal;
  if (name == "exception") return Outcome::kHandledException;
  if (name == "crash") return Outcome::kCrash;
  throw ValidationError("unknown outcome '" + std::string(name) + "'");
}

void ExecutionResult::Normalize() {
  std::sort(blocks.begin(), blocks.end());
  blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());
}

uint64_t GlobalCoverageState::BlockExecCount(std::string_view block) const {
  touched_ = true;
  auto it = blocks_.find(block);
  return it == blocks_.end() ? 0 : it->second;
}

uint64_t GlobalCoverageState::BranchHitCount(std::string_view branch) const {
  touched_ = true;
  auto it = branches_.find(branch);
  return it == branches_.end() ? 0 : it->second;
}

void GlobalCoverageState::Update(const ExecutionResult& result) {
  for (const auto& b : result.blocks) ++blocks_[b];
  for (const auto& [e, hits] : result.branches) branches_[e] += hits;
  ++tests_executed_;
}

}  // namespace evofuzz
