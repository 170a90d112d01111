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

#include "evofuzz/target_families.h"

#include <cmath>
#include <string>

#include "evofuzz/errors.h"

namespace evofuzz {

using nlohmann::json;

namespace {

json Block(const std::string& id, json guard, json on_true, json on_false) {
  return json{{"id", id},
              {"guard", std::move(guard)},
              {"on_true", std::move(on_true)},
              {"on_false", std::move(on_false)}};
}

json ByteGate(size_t index, int8_t magic) {
  return json{{"lhs", "p0[" + std::to_string(index) + "]"},
              {"op", "=="},
              {"rhs", magic}};
}

int8_t DrawMagic(Rng& rng) {
  return kGateMagicBytes[rng.Below(kGateMagicBytes.size())];
}

json GateChain(const GateChainFamily& f, Rng& rng) {
  if (f.depth < 1) throw ValidationError("gate-chain depth must be positive");
  json blocks = json::array();
  for (int i = 0; i < f.depth; ++i) {
    blocks.push_back(Block("g" + std::to_string(i),
                           ByteGate(static_cast<size_t>(i), DrawMagic(rng)),
                           "g" + std::to_string(i + 1), nullptr));
  }
  blocks.push_back(
      Block("g" + std::to_string(f.depth), "always", nullptr, nullptr));
  return json{
      {"name", "gate-chain-" + std::to_string(f.depth)},
      {"methods",
       json::array({{{"id", 0}, {"name", "process"}, {"params", json::array({"array<i8>"})}}})},
      {"blocks", blocks},
      {"entry", {{"0", "g0"}}}};
}

json SharedCore(const SharedCoreFamily& f, Rng& rng) {
  if (f.methods < 1 || f.core_depth < 1) {
    throw ValidationError("shared-core parameters must be positive");
  }
  static constexpr const char* kStubParams[] = {"i32", "string", "bool",
                                                "i64", "f64"};
  json methods = json::array();
  json blocks = json::array();
  json entry = json::object();
  const std::string common = "core.common";
  for (int m = 0; m + 1 < f.methods; ++m) {
    const std::string stub = "stub" + std::to_string(m);
    methods.push_back({{"id", m},
                       {"name", "get" + std::to_string(m)},
                       {"params", json::array({kStubParams[rng.Below(5)]})}});
    blocks.push_back(Block(stub, "always", common, nullptr));
    entry[std::to_string(m)] = stub;
  }
  const int deep = f.methods - 1;
  methods.push_back({{"id", deep},
                     {"name", "inject"},
                     {"params", json::array({"array<i8>"})}});
  blocks.push_back(Block("deep.entry", "always", "deep.parse", nullptr));
  blocks.push_back(Block("deep.parse", "always", "deep.g0", nullptr));
  for (int i = 0; i < f.core_depth; ++i) {
    const std::string next = i + 1 < f.core_depth
                                 ? "deep.g" + std::to_string(i + 1)
                                 : std::string("deep.body");
    blocks.push_back(Block("deep.g" + std::to_string(i),
                           ByteGate(static_cast<size_t>(i), DrawMagic(rng)),
                           next, common));
  }
  blocks.push_back(Block("deep.body", "always", common, nullptr));
  blocks.push_back(Block(common, "always", nullptr, nullptr));
  entry[std::to_string(deep)] = "deep.entry";
  return json{{"name", "shared-core-" + std::to_string(f.methods) + "-" +
                           std::to_string(f.core_depth)},
              {"methods", methods},
              {"blocks", blocks},
              {"entry", entry}};
}

json DeadBranch(const DeadBranchFamily& f, Rng& rng) {
  if (!(f.fraction >= 0 && f.fraction <= 1) || f.blocks_per_method < 1) {
    throw ValidationError("dead-branch fraction must lie in [0,1]");
  }
  static constexpr const char* kParams[] = {"i32", "string", "array<i16>",
                                            "char"};
  static constexpr int kMethods = 4;
  const int dead = static_cast<int>(
      std::floor(f.fraction * f.blocks_per_method + 0.5));
  const int live = f.blocks_per_method - dead;
  json methods = json::array();
  json blocks = json::array();
  json entry = json::object();
  for (int m = 0; m < kMethods; ++m) {
    const std::string prefix = "m" + std::to_string(m) + ".";
    methods.push_back({{"id", m},
                       {"name", "op" + std::to_string(m)},
                       {"params", json::array({kParams[rng.Below(4)], "i32"})}});
    auto live_id = [&](int i) { return prefix + "live" + std::to_string(i); };
    auto dead_id = [&](int i) { return prefix + "dead" + std::to_string(i); };
    const json first_live = live > 0 ? json(live_id(0)) : json();
    // The entry guard is never true, so the dead chain is unreachable.
    blocks.push_back(Block(prefix + "entry", dead > 0 ? "never" : "always",
                           dead > 0 ? json(dead_id(0)) : first_live,
                           dead > 0 ? first_live : json()));
    for (int i = 0; i < live; ++i) {
      blocks.push_back(Block(live_id(i), "always",
                             i + 1 < live ? json(live_id(i + 1)) : json(),
                             nullptr));
    }
    for (int i = 0; i < dead; ++i) {
      blocks.push_back(Block(dead_id(i), "always",
                             i + 1 < dead ? json(dead_id(i + 1)) : json(),
                             nullptr));
    }
    entry[std::to_string(m)] = prefix + "entry";
  }
  return json{{"name", "dead-branch"},
              {"methods", methods},
              {"blocks", blocks},
              {"entry", entry}};
}

}  // namespace

json GenerateBenchmark(const BenchmarkFamily& family, Rng& rng) {
  struct Visitor {
    Rng& rng;
    json operator()(const GateChainFamily& f) const { return GateChain(f, rng); }
    json operator()(const SharedCoreFamily& f) const {
      return SharedCore(f, rng);
    }
    json operator()(const DeadBranchFamily& f) const {
      return DeadBranch(f, rng);
    }
  };
  return std::visit(Visitor{rng}, family);
}

json TrivialTarget() {
  return json{
      {"name", "trivial"},
      {"methods",
       json::array({{{"id", 0}, {"name", "noop"}, {"params", json::array()}}})},
      {"blocks", json::array({Block("b0", "always", nullptr, nullptr)})},
      {"entry", {{"0", "b0"}}}};
}

}  // namespace evofuzz
