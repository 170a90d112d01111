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

#ifndef EVOFUZZ_TARGET_FAMILIES_H_
#define EVOFUZZ_TARGET_FAMILIES_H_

#include <array>
#include <cstdint>
#include <variant>

#include <nlohmann/json.hpp>

#include "evofuzz/rng.h"

namespace evofuzz {

// Magic bytes for gates are drawn from the boundary values that the
// primitive mutation operators can produce in a single step.
inline constexpr std::array<int8_t, 4> kGateMagicBytes = {0, 1, 127, -128};

// One method over array<i8>; block g{i+1} is guarded by input[i] == c_i.
// The all-correct input covers depth + 1 blocks.
struct GateChainFamily {
  int depth = 8;
};

// `methods` methods sharing a common block. All but the last reach only a
// one-block stub before it; the last ("deep") runs a two-block preamble and
// then a `core_depth`-long chain of byte gates.
struct SharedCoreFamily {
  int methods = 11;
  int core_depth = 8;
};

// Four methods whose bodies are straight-line live code plus, for roughly
// `fraction` of the body blocks, code behind a guard that is always false.
struct DeadBranchFamily {
  double fraction = 0.5;
  int blocks_per_method = 6;
};

using BenchmarkFamily =
    std::variant<GateChainFamily, SharedCoreFamily, DeadBranchFamily>;

// Builds a target document (the same schema as target files). Throws
// ValidationError on non-positive parameters.
nlohmann::json GenerateBenchmark(const BenchmarkFamily& family, Rng& rng);

// A one-method, one-block target.
nlohmann::json TrivialTarget();

}  // namespace evofuzz

#endif  // EVOFUZZ_TARGET_FAMILIES_H_
