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

#ifndef EVOFUZZ_SYNTHETIC_H_
#define EVOFUZZ_SYNTHETIC_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "evofuzz/coverage.h"
#include "evofuzz/harness.h"
#include "evofuzz/service.h"
#include "evofuzz/value.h"

namespace evofuzz {

// Terminal pseudo-block used in branch ids ("b0→⊥").
inline constexpr std::string_view kTerminalBlock = "⊥";
inline constexpr std::string_view kBranchArrow = "→";

std::string BranchName(std::string_view from, std::string_view to);

// A path into one parameter: "p2", "p0[3]", "p1.len", "p0.name[1].len".
struct Projection {
  struct Step {
    enum class Kind : uint8_t { kIndex, kLength, kField };
    Kind kind = Kind::kIndex;
    size_t index = 0;  // element index or field index
  };

  size_t param = 0;
  std::vector<Step> steps;
  std::string text;  // as written
};

enum class GuardOp : uint8_t {
  kEq,
  kNe,
  kLt,
  kLe,
  kPrefix,
  kContains,
  kLengthEq,
};

// Literal operand of an atom, converted at load time to match the
// projected type.
using GuardLiteral = std::variant<int64_t, double, std::u32string>;

struct GuardAtom {
  Projection lhs;
  GuardOp op = GuardOp::kEq;
  GuardLiteral rhs;
};

// "always", "never", a comparison atom, or a conjunction/disjunction.
// A guard holds at most kMaxGuardAtoms atoms in total.
struct Guard {
  enum class Kind : uint8_t { kAlways, kNever, kAtom, kAnd, kOr };
  Kind kind = Kind::kAlways;
  GuardAtom atom;
  std::vector<Guard> children;
};

inline constexpr int kMaxGuardAtoms = 4;

enum class BlockEffect : uint8_t { kNone, kRaiseHandled, kCrash };

struct BlockDef {
  std::string id;
  Guard guard;
  std::optional<std::string> on_true;   // nullopt: terminal
  std::optional<std::string> on_false;  // nullopt: terminal
  BlockEffect effect = BlockEffect::kNone;
  nlohmann::json source;  // guard as written, kept for re-serialization
};

// A validated, immutable instrumented target: a per-method DAG of guarded
// blocks. Blocks may be shared between methods.
class SyntheticService {
 public:
  // Parses and validates a target definition. Throws ValidationError with a
  // location ("blocks[3].guard: ...") on any problem.
  static SyntheticService FromJson(const nlohmann::json& doc);

  const ServiceDescriptor& descriptor() const { return descriptor_; }
  std::span<const BlockDef> blocks() const { return blocks_; }
  const std::map<MethodId, std::string>& entry() const { return entry_; }
  const BlockDef* FindBlock(std::string_view id) const;

  // Interprets the call from the method's entry block. Throws
  // ContractViolation if the call does not match the descriptor.
  ExecutionResult Execute(const Call& call) const;

  // Canonical target document.
  nlohmann::json ToJson() const;

 private:
  SyntheticService() = default;

  ServiceDescriptor descriptor_;
  std::vector<BlockDef> blocks_;
  std::unordered_map<std::string, size_t> index_;
  std::map<MethodId, std::string> entry_;
  // Resolved successor indices; -1 is terminal.
  std::vector<int> next_true_;
  std::vector<int> next_false_;
};

// Reads and validates a target file. Throws IoError if unreadable and
// ValidationError (prefixed with the path) if malformed.
SyntheticService LoadTarget(const std::filesystem::path& path);
SyntheticService ParseTarget(std::string_view text);

bool EvaluateGuard(const Guard& guard, std::span<const Value> inputs);

// Returns the descriptor verbatim.
inline const ServiceDescriptor& ListMethods(const SyntheticService& svc) {
  return svc.descriptor();
}

// In-process harness over a shared synthetic service.
class SyntheticHarness : public Harness {
 public:
  explicit SyntheticHarness(std::shared_ptr<const SyntheticService> service)
      : service_(std::move(service)) {}

  const ServiceDescriptor& descriptor() const override {
    return service_->descriptor();
  }
  ExecutionResult Execute(const Call& call, bool collect_coverage) override;

  const SyntheticService& service() const { return *service_; }

 private:
  std::shared_ptr<const SyntheticService> service_;
};

}  // namespace evofuzz

#endif  // EVOFUZZ_SYNTHETIC_H_
