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

#include "evofuzz/synthetic.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "evofuzz/codec.h"
#include "evofuzz/errors.h"
#include "evofuzz/genome.h"

namespace evofuzz {

using nlohmann::json;

std::string BranchName(std::string_view from, std::string_view to) {
  std::string out;
  out.reserve(from.size() + to.size() + kBranchArrow.size());
  out += from;
  out += kBranchArrow;
  out += to;
  return out;
}

namespace {

// ---------------------------------------------------------------------------
// Guard syntax. Parsed once per block, then resolved against the types of
// every method that can reach the block.

struct RawStep {
  bool is_index = false;
  size_t index = 0;
  std::string name;
};

struct RawProjection {
  size_t param = 0;
  std::vector<RawStep> steps;
  std::string text;
};

RawProjection ParseProjection(const std::string& text) {
  auto fail = [&](const std::string& what) {
    throw ValidationError("projection '" + text + "': " + what);
  };
  RawProjection out;
  out.text = text;
  size_t pos = 0;
  if (text.empty() || text[0] != 'p') fail("must start with p<index>");
  ++pos;
  size_t digits = pos;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    ++pos;
  }
  if (pos == digits) fail("missing parameter index");
  out.param = std::stoul(text.substr(digits, pos - digits));
  while (pos < text.size()) {
    RawStep step;
    if (text[pos] == '[') {
      size_t close = text.find(']', pos);
      if (close == std::string::npos || close == pos + 1) fail("bad index");
      std::string num = text.substr(pos + 1, close - pos - 1);
      if (!std::all_of(num.begin(), num.end(), [](char c) {
            return std::isdigit(static_cast<unsigned char>(c));
          })) {
        fail("index must be a nonnegative integer");
      }
      step.is_index = true;
      step.index = std::stoul(num);
      pos = close + 1;
    } else if (text[pos] == '.') {
      size_t start = ++pos;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) ||
              text[pos] == '_')) {
        ++pos;
      }
      if (pos == start) fail("empty accessor");
      step.name = text.substr(start, pos - start);
    } else {
      fail(std::string("unexpected '") + text[pos] + "'");
    }
    out.steps.push_back(std::move(step));
  }
  return out;
}

struct RawGuard {
  Guard::Kind kind = Guard::Kind::kAlways;
  RawProjection lhs;
  GuardOp op = GuardOp::kEq;
  json rhs;
  std::vector<RawGuard> children;
};

GuardOp ParseOp(const std::string& op) {
  if (op == "==") return GuardOp::kEq;
  if (op == "!=") return GuardOp::kNe;
  if (op == "<") return GuardOp::kLt;
  if (op == "<=") return GuardOp::kLe;
  if (op == "prefix") return GuardOp::kPrefix;
  if (op == "contains") return GuardOp::kContains;
  if (op == "len==") return GuardOp::kLengthEq;
  throw ValidationError("unknown guard operator '" + op + "'");
}

RawGuard ParseRawGuard(const json& j, int& atoms) {
  RawGuard g;
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "always") return g;
    if (s == "never") {
      g.kind = Guard::Kind::kNever;
      return g;
    }
    throw ValidationError("unknown guard '" + s + "'");
  }
  if (!j.is_object()) {
    throw ValidationError("guard must be \"always\", \"never\" or an object");
  }
  for (const char* key : {"and", "or"}) {
    if (j.contains(key)) {
      if (j.size() != 1 || !j[key].is_array() || j[key].empty()) {
        throw ValidationError(std::string("\"") + key +
                              "\" takes a nonempty array and nothing else");
      }
      g.kind = key[0] == 'a' ? Guard::Kind::kAnd : Guard::Kind::kOr;
      for (const auto& child : j[key]) {
        g.children.push_back(ParseRawGuard(child, atoms));
      }
      return g;
    }
  }
  if (!j.contains("lhs") || !j["lhs"].is_string() || !j.contains("op") ||
      !j["op"].is_string() || !j.contains("rhs")) {
    throw ValidationError("atom needs \"lhs\", \"op\" and \"rhs\"");
  }
  if (++atoms > kMaxGuardAtoms) {
    throw ValidationError("guard has more than " +
                          std::to_string(kMaxGuardAtoms) + " atoms");
  }
  g.kind = Guard::Kind::kAtom;
  g.lhs = ParseProjection(j["lhs"].get<std::string>());
  g.op = ParseOp(j["op"].get<std::string>());
  g.rhs = j["rhs"];
  return g;
}

// The projected operand: a value of some type, or a length.
struct ProjectedType {
  bool is_length = false;
  ValueType type;
};

Projection ResolveProjection(const RawProjection& raw,
                             const MethodSignature& sig,
                             ProjectedType& result) {
  if (raw.param >= sig.params.size()) {
    throw ValidationError("projection '" + raw.text + "': parameter index " +
                          std::to_string(raw.param) + " out of range for " +
                          sig.name + " (" + std::to_string(sig.params.size()) +
                          " params)");
  }
  Projection out;
  out.param = raw.param;
  out.text = raw.text;
  ValueType current = sig.params[raw.param];
  bool is_length = false;
  for (const RawStep& step : raw.steps) {
    if (is_length) {
      throw ValidationError("projection '" + raw.text +
                            "': nothing follows .len");
    }
    Projection::Step s;
    if (step.is_index) {
      if (current.tag() != TypeTag::kArray) {
        throw ValidationError("projection '" + raw.text +
                              "': [k] applies to arrays only");
      }
      s.kind = Projection::Step::Kind::kIndex;
      s.index = step.index;
      current = current.element();
    } else if (current.tag() == TypeTag::kObject) {
      int idx = current.FieldIndex(step.name);
      if (idx < 0) {
        throw ValidationError("projection '" + raw.text + "': no field '" +
                              step.name + "'");
      }
      s.kind = Projection::Step::Kind::kField;
      s.index = static_cast<size_t>(idx);
      current = current.fields()[static_cast<size_t>(idx)].type;
    } else if (step.name == "len" && (current.tag() == TypeTag::kString ||
                                      current.tag() == TypeTag::kArray)) {
      s.kind = Projection::Step::Kind::kLength;
      is_length = true;
    } else {
      throw ValidationError("projection '" + raw.text + "': ." + step.name +
                            " does not apply to " + FormatTypeExpr(current));
    }
    out.steps.push_back(s);
  }
  result.is_length = is_length;
  result.type = current;
  return out;
}

int64_t IntegerLiteral(const json& rhs, const std::string& what) {
  if (rhs.is_boolean()) return rhs.get<bool>() ? 1 : 0;
  if (!rhs.is_number_integer()) {
    throw ValidationError(what + ": expected an integer literal");
  }
  if (rhs.is_number_unsigned() && rhs.get<uint64_t>() > INT64_MAX) {
    throw ValidationError(what + ": literal out of range");
  }
  return rhs.get<int64_t>();
}

Guard ResolveGuard(const RawGuard& raw, const MethodSignature& sig) {
  Guard g;
  g.kind = raw.kind;
  if (raw.kind == Guard::Kind::kAnd || raw.kind == Guard::Kind::kOr) {
    for (const auto& child : raw.children) {
      g.children.push_back(ResolveGuard(child, sig));
    }
    return g;
  }
  if (raw.kind != Guard::Kind::kAtom) return g;

  ProjectedType pt;
  g.atom.lhs = ResolveProjection(raw.lhs, sig, pt);
  g.atom.op = raw.op;
  const std::string what = "atom on '" + raw.lhs.text + "'";
  const json& rhs = raw.rhs;
  switch (raw.op) {
    case GuardOp::kPrefix:
    case GuardOp::kContains:
      if (pt.is_length || pt.type.tag() != TypeTag::kString) {
        throw ValidationError(what + ": prefix/contains need a string");
      }
      if (!rhs.is_string()) {
        throw ValidationError(what + ": expected a string literal");
      }
      g.atom.rhs = FromUtf8(rhs.get<std::string>());
      return g;
    case GuardOp::kLengthEq:
      if (pt.is_length || (pt.type.tag() != TypeTag::kString &&
                           pt.type.tag() != TypeTag::kArray)) {
        throw ValidationError(what + ": len== needs a string or array");
      }
      g.atom.rhs = IntegerLiteral(rhs, what);
      return g;
    default:
      break;
  }
  // Comparisons.
  if (pt.is_length) {
    g.atom.rhs = IntegerLiteral(rhs, what);
  } else if (pt.type.tag() == TypeTag::kChar && rhs.is_string()) {
    std::u32string s = FromUtf8(rhs.get<std::string>());
    if (s.size() != 1) {
      throw ValidationError(what + ": char literal must be one character");
    }
    g.atom.rhs = static_cast<int64_t>(s[0]);
  } else if (pt.type.IsIntegral()) {
    g.atom.rhs = IntegerLiteral(rhs, what);
  } else if (pt.type.IsFloating()) {
    if (!rhs.is_number()) {
      throw ValidationError(what + ": expected a numeric literal");
    }
    g.atom.rhs = rhs.get<double>();
  } else if (pt.type.tag() == TypeTag::kString) {
    if (!rhs.is_string()) {
      throw ValidationError(what + ": expected a string literal");
    }
    g.atom.rhs = FromUtf8(rhs.get<std::string>());
  } else {
    throw ValidationError(what + ": cannot compare " +
                          FormatTypeExpr(pt.type));
  }
  return g;
}

void CollectParams(const RawGuard& g, std::set<size_t>& out) {
  if (g.kind == Guard::Kind::kAtom) out.insert(g.lhs.param);
  for (const auto& c : g.children) CollectParams(c, out);
}

// ---------------------------------------------------------------------------
// Evaluation.

struct Projected {
  const Value* value = nullptr;  // set unless this is a length
  int64_t length = 0;
};

// nullopt when the path crosses a null or runs past the end of an array.
std::optional<Projected> Project(const Projection& proj,
                                 std::span<const Value> inputs) {
  const Value* v = &inputs[proj.param];
  for (const auto& step : proj.steps) {
    if (v->is_null()) return std::nullopt;
    switch (step.kind) {
      case Projection::Step::Kind::kIndex:
        if (step.index >= v->items().size()) return std::nullopt;
        v = &v->items()[step.index];
        break;
      case Projection::Step::Kind::kField:
        v = &v->items()[step.index];
        break;
      case Projection::Step::Kind::kLength:
        return Projected{nullptr, static_cast<int64_t>(PointCount(*v))};
    }
  }
  if (v->is_null()) return std::nullopt;
  return Projected{v, 0};
}

template <typename T>
bool Compare(GuardOp op, const T& a, const T& b) {
  switch (op) {
    case GuardOp::kEq: return a == b;
    case GuardOp::kNe: return a != b;
    case GuardOp::kLt: return a < b;
    case GuardOp::kLe: return a <= b;
    default: return false;
  }
}

bool EvaluateAtom(const GuardAtom& atom, std::span<const Value> inputs) {
  std::optional<Projected> p = Project(atom.lhs, inputs);
  if (!p) return false;
  if (p->value == nullptr) {
    return Compare(atom.op, p->length, std::get<int64_t>(atom.rhs));
  }
  const Value& v = *p->value;
  switch (atom.op) {
    case GuardOp::kPrefix: {
      const auto& needle = std::get<std::u32string>(atom.rhs);
      return v.as_string().compare(0, needle.size(), needle) == 0;
    }
    case GuardOp::kContains:
      return v.as_string().find(std::get<std::u32string>(atom.rhs)) !=
             std::u32string::npos;
    case GuardOp::kLengthEq:
      return static_cast<int64_t>(PointCount(v)) ==
             std::get<int64_t>(atom.rhs);
    default:
      break;
  }
  switch (v.tag()) {
    case TypeTag::kFloat:
      return Compare(atom.op, static_cast<double>(v.as_float()),
                     std::get<double>(atom.rhs));
    case TypeTag::kDouble:
      return Compare(atom.op, v.as_double(), std::get<double>(atom.rhs));
    case TypeTag::kString:
      return Compare(atom.op, v.as_string(),
                     std::get<std::u32string>(atom.rhs));
    default:
      return Compare(atom.op, v.as_int(), std::get<int64_t>(atom.rhs));
  }
}

BlockEffect ParseEffect(const json& j) {
  if (j.is_null()) return BlockEffect::kNone;
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "raise-handled") return BlockEffect::kRaiseHandled;
    if (s == "crash") return BlockEffect::kCrash;
  }
  throw ValidationError("effect must be \"raise-handled\" or \"crash\"");
}

std::optional<std::string> ParseSuccessor(const json& block, const char* key) {
  if (!block.contains(key) || block[key].is_null()) return std::nullopt;
  if (!block[key].is_string()) {
    throw ValidationError(std::string(key) + ": expected a block id or null");
  }
  return block[key].get<std::string>();
}

}  // namespace

bool EvaluateGuard(const Guard& guard, std::span<const Value> inputs) {
  switch (guard.kind) {
    case Guard::Kind::kAlways:
      return true;
    case Guard::Kind::kNever:
      return false;
    case Guard::Kind::kAtom:
      return EvaluateAtom(guard.atom, inputs);
    case Guard::Kind::kAnd:
      for (const auto& c : guard.children) {
        if (!EvaluateGuard(c, inputs)) return false;
      }
      return true;
    case Guard::Kind::kOr:
      for (const auto& c : guard.children) {
        if (EvaluateGuard(c, inputs)) return true;
      }
      return false;
  }
  return false;
}

SyntheticService SyntheticService::FromJson(const json& doc) {
  SyntheticService svc;
  if (!doc.is_object()) throw ValidationError("target must be a JSON object");
  svc.descriptor_ = DecodeDescriptor(doc);

  if (!doc.contains("blocks") || !doc["blocks"].is_array()) {
    throw ValidationError("blocks: expected an array");
  }
  const json& blocks = doc["blocks"];
  std::vector<RawGuard> raw_guards;
  for (size_t i = 0; i < blocks.size(); ++i) {
    const std::string where = "blocks[" + std::to_string(i) + "]";
    try {
      const json& b = blocks[i];
      if (!b.is_object()) throw ValidationError("expected an object");
      if (!b.contains("id") || !b["id"].is_string() ||
          b["id"].get<std::string>().empty()) {
        throw ValidationError("id: expected a nonempty string");
      }
      BlockDef def;
      def.id = b["id"].get<std::string>();
      if (def.id == kTerminalBlock) {
        throw ValidationError("id: '⊥' is reserved for the terminal");
      }
      if (svc.index_.count(def.id)) {
        throw ValidationError("duplicate block id '" + def.id + "'");
      }
      def.source = b.contains("guard") ? b["guard"] : json("always");
      int atoms = 0;
      try {
        raw_guards.push_back(ParseRawGuard(def.source, atoms));
      } catch (const ValidationError& e) {
        throw ValidationError(std::string("guard: ") + e.what());
      }
      def.on_true = ParseSuccessor(b, "on_true");
      def.on_false = ParseSuccessor(b, "on_false");
      def.effect = ParseEffect(b.contains("effect") ? b["effect"] : json());
      svc.index_[def.id] = svc.blocks_.size();
      svc.blocks_.push_back(std::move(def));
    } catch (const ValidationError& e) {
      throw ValidationError(where + ": " + e.what());
    }
  }

  auto resolve = [&](const std::optional<std::string>& id,
                     const std::string& where) -> int {
    if (!id) return -1;
    auto it = svc.index_.find(*id);
    if (it == svc.index_.end()) {
      throw ValidationError(where + ": unknown block '" + *id + "'");
    }
    return static_cast<int>(it->second);
  };
  for (size_t i = 0; i < svc.blocks_.size(); ++i) {
    const std::string where = "blocks[" + std::to_string(i) + "]";
    svc.next_true_.push_back(resolve(svc.blocks_[i].on_true, where + ".on_true"));
    svc.next_false_.push_back(
        resolve(svc.blocks_[i].on_false, where + ".on_false"));
  }

  if (!doc.contains("entry") || !doc["entry"].is_object()) {
    throw ValidationError("entry: expected an object of method id -> block");
  }
  for (const auto& [key, value] : doc["entry"].items()) {
    const std::string where = "entry[\"" + key + "\"]";
    MethodId id;
    try {
      size_t used = 0;
      unsigned long parsed = std::stoul(key, &used);
      if (used != key.size() || parsed > UINT32_MAX) throw std::exception();
      id = static_cast<MethodId>(parsed);
    } catch (...) {
      throw ValidationError(where + ": key must be a method id");
    }
    if (svc.descriptor_.FindMethod(id) == nullptr) {
      throw ValidationError(where + ": no method with id " + key);
    }
    if (!value.is_string()) {
      throw ValidationError(where + ": expected a block id");
    }
    resolve(value.get<std::string>(), where);
    svc.entry_[id] = value.get<std::string>();
  }
  for (const auto& m : svc.descriptor_.methods) {
    if (!svc.entry_.count(m.id)) {
      throw ValidationError("entry: method " + std::to_string(m.id) + " (" +
                            m.name + ") has no entry block");
    }
  }

  // Per-method DFS: reject cycles, then resolve the guards of every
  // reachable block against the method's parameters.
  std::vector<const MethodSignature*> resolved_for(svc.blocks_.size(), nullptr);
  for (const auto& m : svc.descriptor_.methods) {
    enum Color : uint8_t { kWhite, kGrey, kBlack };
    std::vector<Color> color(svc.blocks_.size(), kWhite);
    // Iterative DFS with an explicit successor cursor.
    std::vector<std::pair<int, int>> stack;
    int start = static_cast<int>(svc.index_.at(svc.entry_.at(m.id)));
    stack.emplace_back(start, 0);
    color[static_cast<size_t>(start)] = kGrey;
    while (!stack.empty()) {
      auto& [node, cursor] = stack.back();
      const size_t n = static_cast<size_t>(node);
      if (cursor == 0) {
        const std::string where = "blocks[" + std::to_string(n) + "].guard";
        try {
          if (resolved_for[n] == nullptr) {
            svc.blocks_[n].guard = ResolveGuard(raw_guards[n], m);
            resolved_for[n] = &m;
          } else if (resolved_for[n] != &m) {
            ResolveGuard(raw_guards[n], m);
            std::set<size_t> params;
            CollectParams(raw_guards[n], params);
            for (size_t p : params) {
              if (!(resolved_for[n]->params[p] == m.params[p])) {
                throw ValidationError(
                    "shared block reads parameter " + std::to_string(p) +
                    " with different types in methods " +
                    resolved_for[n]->name + " and " + m.name);
              }
            }
          }
        } catch (const ValidationError& e) {
          throw ValidationError(where + " (method " + m.name + "): " +
                                e.what());
        }
      }
      if (cursor < 2) {
        int succ = cursor == 0 ? svc.next_true_[n] : svc.next_false_[n];
        ++cursor;
        if (succ < 0) continue;
        const size_t s = static_cast<size_t>(succ);
        if (color[s] == kGrey) {
          throw ValidationError("cycle through block '" + svc.blocks_[s].id +
                                "' reachable from method " + m.name);
        }
        if (color[s] == kWhite) {
          color[s] = kGrey;
          stack.emplace_back(succ, 0);
        }
        continue;
      }
      color[n] = kBlack;
      stack.pop_back();
    }
  }
  return svc;
}

const BlockDef* SyntheticService::FindBlock(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &blocks_[it->second];
}

ExecutionResult SyntheticService::Execute(const Call& call) const {
  const MethodSignature* sig = descriptor_.FindMethod(call.method);
  if (sig == nullptr) {
    throw ContractViolation("call to unknown method " +
                            std::to_string(call.method));
  }
  bool valid = call.inputs.size() == sig->params.size();
  for (size_t i = 0; valid && i < sig->params.size(); ++i) {
    valid = Conforms(call.inputs[i], sig->params[i]);
  }
  if (!valid) {
    throw ContractViolation("call does not match the signature of " +
                            sig->name);
  }
  ExecutionResult result;
  size_t node = index_.at(entry_.at(call.method));
  while (true) {
    const BlockDef& block = blocks_[node];
    result.blocks.push_back(block.id);
    const bool taken = EvaluateGuard(block.guard, call.inputs);
    const int next = taken ? next_true_[node] : next_false_[node];
    const std::string_view to =
        next < 0 ? kTerminalBlock
                 : std::string_view(blocks_[static_cast<size_t>(next)].id);
    ++result.branches[BranchName(block.id, to)];
    if (next < 0) {
      if (block.effect == BlockEffect::kRaiseHandled) {
        result.outcome = Outcome::kHandledException;
        result.log = "handled exception raised in block " + block.id;
      } else if (block.effect == BlockEffect::kCrash) {
        result.outcome = Outcome::kCrash;
        result.log = "crash in block " + block.id;
      }
      break;
    }
    node = static_cast<size_t>(next);
  }
  result.Normalize();
  return result;
}

json SyntheticService::ToJson() const {
  json doc = EncodeDescriptor(descriptor_);
  json blocks = json::array();
  for (const auto& b : blocks_) {
    json jb = {{"id", b.id},
               {"guard", b.source},
               {"on_true", b.on_true ? json(*b.on_true) : json()},
               {"on_false", b.on_false ? json(*b.on_false) : json()}};
    if (b.effect == BlockEffect::kRaiseHandled) jb["effect"] = "raise-handled";
    if (b.effect == BlockEffect::kCrash) jb["effect"] = "crash";
    blocks.push_back(std::move(jb));
  }
  doc["blocks"] = std::move(blocks);
  json entry = json::object();
  for (const auto& [id, block] : entry_) entry[std::to_string(id)] = block;
  doc["entry"] = std::move(entry);
  return doc;
}

SyntheticService ParseTarget(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("parse error: ") + e.what());
  }
  return SyntheticService::FromJson(doc);
}

SyntheticService LoadTarget(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read target file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return ParseTarget(buffer.str());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

ExecutionResult SyntheticHarness::Execute(const Call& call,
                                          bool collect_coverage) {
  ExecutionResult r = service_->Execute(call);
  if (!collect_coverage) {
    r.blocks.clear();
    r.branches.clear();
  }
  return r;
}

}  // namespace evofuzz
