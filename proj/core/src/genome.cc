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

#include "evofuzz/genome.h"

#include <algorithm>
#include <array>
#include <limits>
#include <utility>

#include "evofuzz/errors.h"

namespace evofuzz {

namespace {

constexpr std::array<char32_t, 11> kSpecialChars = {
    U'\0', U'\n', U'\r', U'"', U'\'', U'\\', U'%', U';', U'{', U'}', U'‮',
};

constexpr std::array<char32_t, 6> kMultiByteChars = {
    U'é', U'ñ', U'Ж', U'中', U'‮', U'\U0001F600',
};

char32_t RandomChar(Rng& rng) {
  if (rng.Bernoulli(kMultiByteCharProbability)) {
    return kMultiByteChars[rng.Below(kMultiByteChars.size())];
  }
  return static_cast<char32_t>(rng.Range(0x20, 0x7E));
}

std::u32string RandomString(Rng& rng, size_t length) {
  std::u32string s;
  s.reserve(length);
  for (size_t i = 0; i < length; ++i) s += RandomChar(rng);
  return s;
}

int64_t RandomScalar(Rng& rng) {
  // Scalars are [0, 0xD7FF] and [0xE000, 0x10FFFF].
  int64_t v = rng.Range(0, 0x10FFFF - 0x800);
  return v >= 0xD800 ? v + 0x800 : v;
}

template <typename F>
F RandomFloating(Rng& rng) {
  using L = std::numeric_limits<F>;
  if (rng.Bernoulli(kSpecialFloatProbability)) {
    static constexpr std::array<F, 8> kSpecial = {
        F(0), -F(0), F(1), F(-1), L::max(), L::lowest(), L::min(),
        L::denorm_min(),
    };
    return kSpecial[rng.Below(kSpecial.size())];
  }
  return static_cast<F>((rng.Uniform() * 2 - 1) * kFloatRange);
}

Value RandomPrimitive(const ValueType& type, Rng& rng) {
  switch (type.tag()) {
    case TypeTag::kFloat:
      return Value::Float(RandomFloating<float>(rng));
    case TypeTag::kDouble:
      return Value::Double(RandomFloating<double>(rng));
    case TypeTag::kChar:
      return Value::Integral(TypeTag::kChar, RandomScalar(rng));
    default:
      return Value::Integral(
          type.tag(),
          rng.Range(IntegralMin(type.tag()), IntegralMax(type.tag())));
  }
}

Value RandomNonNull(const ValueType& type, Rng& rng) {
  switch (type.tag()) {
    case TypeTag::kString: {
      size_t len = rng.Below(kMaxRandomStringLength + 1);
      return Value::String(RandomString(rng, len));
    }
    case TypeTag::kArray: {
      size_t len = rng.Below(kMaxRandomArrayLength + 1);
      Value::Items items;
      items.reserve(len);
      for (size_t i = 0; i < len; ++i) {
        items.push_back(RandomValue(type.element(), rng));
      }
      return Value::Array(type, std::move(items));
    }
    case TypeTag::kObject: {
      Value::Items fields;
      for (const auto& f : type.fields()) {
        fields.push_back(RandomValue(f.type, rng));
      }
      return Value::Object(type, std::move(fields));
    }
    default:
      return RandomPrimitive(type, rng);
  }
}

}  // namespace

std::span<const char32_t> SpecialCharacters() { return kSpecialChars; }

Value RandomValue(const ValueType& type, Rng& rng) {
  if (type.IsNullable() && rng.Bernoulli(kNullProbability)) {
    return Value::NullOf(type);
  }
  return RandomNonNull(type, rng);
}

Individual RandomIndividual(const MethodSignature& sig, Rng& rng,
                            IdSource& ids) {
  Individual ind;
  ind.id = ids.Next();
  ind.method = sig.id;
  ind.inputs.reserve(sig.params.size());
  for (const auto& p : sig.params) ind.inputs.push_back(RandomValue(p, rng));
  return ind;
}

// ---------------------------------------------------------------------------
// Mutation.

namespace {

template <typename F>
Value MakeFloating(F f) {
  if constexpr (std::is_same_v<F, float>) {
    return Value::Float(f);
  } else {
    return Value::Double(f);
  }
}

template <typename F>
Value FloatingOp(const Value& v, F current, PrimitiveOp op, Rng& rng) {
  using L = std::numeric_limits<F>;
  switch (op) {
    case PrimitiveOp::kRandom:
      return RandomPrimitive(v.type(), rng);
    case PrimitiveOp::kZero:
      return MakeFloating<F>(F(0));
    case PrimitiveOp::kOne:
      return MakeFloating<F>(F(1));
    case PrimitiveOp::kMax:
      return MakeFloating<F>(L::max());
    case PrimitiveOp::kMin:
      return MakeFloating<F>(L::lowest());
    case PrimitiveOp::kAddDelta:
      return MakeFloating<F>(current + static_cast<F>(rng.Range(1, kMaxDelta)));
    case PrimitiveOp::kSubtractDelta:
      return MakeFloating<F>(current - static_cast<F>(rng.Range(1, kMaxDelta)));
    case PrimitiveOp::kSpecialChar:
      break;
  }
  throw ContractViolation("special-character mutation applies to char only");
}

Value Reseat(const Value& original, Value::Items items) {
  return original.tag() == TypeTag::kArray
             ? Value::Array(original.type(), std::move(items))
             : Value::Object(original.type(), std::move(items));
}

}  // namespace

Value ApplyPrimitiveOp(const Value& v, PrimitiveOp op, Rng& rng) {
  const TypeTag tag = v.tag();
  if (!v.type().IsPrimitive() || tag == TypeTag::kString) {
    throw ContractViolation("ApplyPrimitiveOp on non-primitive value");
  }
  if (tag == TypeTag::kFloat) return FloatingOp(v, v.as_float(), op, rng);
  if (tag == TypeTag::kDouble) return FloatingOp(v, v.as_double(), op, rng);
  switch (op) {
    case PrimitiveOp::kRandom:
      return RandomPrimitive(v.type(), rng);
    case PrimitiveOp::kZero:
      return Value::Integral(tag, 0);
    case PrimitiveOp::kOne:
      return Value::Integral(tag, 1);
    case PrimitiveOp::kMax:
      return Value::Integral(tag, IntegralMax(tag));
    case PrimitiveOp::kMin:
      return Value::Integral(tag, IntegralMin(tag));
    case PrimitiveOp::kAddDelta:
      return Value::FromBits(
          tag, v.Bits() + static_cast<uint64_t>(rng.Range(1, kMaxDelta)));
    case PrimitiveOp::kSubtractDelta:
      return Value::FromBits(
          tag, v.Bits() - static_cast<uint64_t>(rng.Range(1, kMaxDelta)));
    case PrimitiveOp::kSpecialChar:
      if (tag != TypeTag::kChar) break;
      return Value::Integral(
          tag, kSpecialChars[rng.Below(kSpecialChars.size())]);
  }
  throw ContractViolation("special-character mutation applies to char only");
}

Value ApplyStringOp(const Value& v, StringOp op, Rng& rng) {
  if (v.tag() != TypeTag::kString) {
    throw ContractViolation("ApplyStringOp on non-string value");
  }
  std::u32string s = v.is_null() ? std::u32string() : v.as_string();
  switch (op) {
    case StringOp::kRandom:
      return Value::String(
          RandomString(rng, rng.Below(kMaxRandomStringLength + 1)));
    case StringOp::kVeryLong:
      return Value::String(RandomString(rng, kVeryLongStringLength));
    case StringOp::kTruncate:
      if (!s.empty()) s.resize(rng.Below(s.size()));
      return Value::String(std::move(s));
    case StringOp::kInsertSubstring: {
      size_t at = rng.Below(s.size() + 1);
      s.insert(at, RandomString(rng, rng.Range(1, kMaxInsertedSubstringLength)));
      return Value::String(std::move(s));
    }
    case StringOp::kRemoveSubstring:
      if (!s.empty()) {
        size_t start = rng.Below(s.size());
        size_t count = rng.Range(1, static_cast<int64_t>(s.size() - start));
        s.erase(start, count);
      }
      return Value::String(std::move(s));
    case StringOp::kSpecialChar: {
      char32_t c = kSpecialChars[rng.Below(kSpecialChars.size())];
      if (s.empty()) {
        s += c;
      } else {
        s[rng.Below(s.size())] = c;
      }
      return Value::String(std::move(s));
    }
    case StringOp::kEmpty:
      return Value::String({});
    case StringOp::kNull:
      return Value::NullOf(v.type());
  }
  throw ContractViolation("unknown string operator");
}

Value ApplyArrayOp(const Value& v, ArrayOp op, Rng& rng) {
  if (v.tag() != TypeTag::kArray) {
    throw ContractViolation("ApplyArrayOp on non-array value");
  }
  const ValueType& element = v.type().element();
  Value::Items items = v.is_null() ? Value::Items() : v.items();
  switch (op) {
    case ArrayOp::kRandom:
      return RandomNonNull(v.type(), rng);
    case ArrayOp::kRemoveItems:
      if (!items.empty()) {
        size_t count = rng.Range(1, static_cast<int64_t>(items.size()));
        for (size_t i = 0; i < count; ++i) {
          items.erase(items.begin() + static_cast<ptrdiff_t>(
                                          rng.Below(items.size())));
        }
      }
      return Value::Array(v.type(), std::move(items));
    case ArrayOp::kAddItems: {
      size_t count = rng.Range(1, kMaxAddedItems);
      for (size_t i = 0; i < count; ++i) {
        size_t at = rng.Below(items.size() + 1);
        items.insert(items.begin() + static_cast<ptrdiff_t>(at),
                     RandomValue(element, rng));
      }
      return Value::Array(v.type(), std::move(items));
    }
    case ArrayOp::kMutateItem:
      if (items.empty()) {
        items.push_back(RandomValue(element, rng));
      } else {
        size_t at = rng.Below(items.size());
        items[at] = MutateValue(items[at], rng);
      }
      return Value::Array(v.type(), std::move(items));
    case ArrayOp::kEmpty:
      return Value::Array(v.type(), {});
    case ArrayOp::kNull:
      return Value::NullOf(v.type());
  }
  throw ContractViolation("unknown array operator");
}

Value ApplyObjectOp(const Value& v, ObjectOp op, Rng& rng) {
  if (v.tag() != TypeTag::kObject) {
    throw ContractViolation("ApplyObjectOp on non-object value");
  }
  switch (op) {
    case ObjectOp::kNull:
      return Value::NullOf(v.type());
    case ObjectOp::kRegenerate:
      return RandomNonNull(v.type(), rng);
    case ObjectOp::kMutateField: {
      if (v.is_null() || v.items().empty()) return RandomNonNull(v.type(), rng);
      Value::Items fields = v.items();
      size_t at = rng.Below(fields.size());
      fields[at] = MutateValue(fields[at], rng);
      return Value::Object(v.type(), std::move(fields));
    }
  }
  throw ContractViolation("unknown object operator");
}

Value MutateValue(const Value& v, Rng& rng) {
  switch (v.tag()) {
    case TypeTag::kString:
      return ApplyStringOp(v, static_cast<StringOp>(rng.Below(8)), rng);
    case TypeTag::kArray:
      return ApplyArrayOp(v, static_cast<ArrayOp>(rng.Below(6)), rng);
    case TypeTag::kObject:
      return ApplyObjectOp(v, static_cast<ObjectOp>(rng.Below(3)), rng);
    case TypeTag::kChar:
      return ApplyPrimitiveOp(v, static_cast<PrimitiveOp>(rng.Below(8)), rng);
    default:
      return ApplyPrimitiveOp(v, static_cast<PrimitiveOp>(rng.Below(7)), rng);
  }
}

Individual MutateIndividual(const Individual& ind, Rng& rng, IdSource& ids) {
  Individual child = ind;
  child.id = ids.Next();
  if (!child.inputs.empty()) {
    size_t at = rng.Below(child.inputs.size());
    child.inputs[at] = MutateValue(child.inputs[at], rng);
  }
  return child;
}

// ---------------------------------------------------------------------------
// Crossover.

size_t PointCount(const Value& v) {
  if (v.is_null()) return 0;
  switch (v.tag()) {
    case TypeTag::kString:
      return v.as_string().size();
    case TypeTag::kArray:
    case TypeTag::kObject:
      return v.items().size();
    default:
      return static_cast<size_t>(BitWidth(v.tag()));
  }
}

namespace {

void RequireSameType(const Value& a, const Value& b) {
  if (!(a.type() == b.type())) {
    throw ContractViolation("inner crossover of values of different types");
  }
}

// Mask selecting points [lo, hi) of a `width`-bit primitive, where point 0
// is the most significant bit.
uint64_t PointMask(int width, size_t lo, size_t hi) {
  uint64_t mask = 0;
  for (size_t p = lo; p < hi; ++p) {
    mask |= uint64_t{1} << (width - 1 - static_cast<int>(p));
  }
  return mask;
}

// Builds an offspring from a per-point chooser over the shared prefix of
// the two values plus the tail of `tail_owner`.
template <typename Chooser>
Value Splice(const Value& a, const Value& b, const Value& tail_owner,
             Chooser from_a) {
  const size_t shared = std::min(PointCount(a), PointCount(b));
  if (a.type().IsPrimitive() && a.tag() != TypeTag::kString) {
    const int width = BitWidth(a.tag());
    uint64_t mask = 0;
    for (size_t p = 0; p < shared; ++p) {
      if (from_a(p)) mask |= PointMask(width, p, p + 1);
    }
    return Value::FromBits(a.tag(), (a.Bits() & mask) | (b.Bits() & ~mask));
  }
  if (a.tag() == TypeTag::kString) {
    const auto& sa = a.as_string();
    const auto& sb = b.as_string();
    std::u32string out;
    out.reserve(std::max(sa.size(), sb.size()));
    for (size_t p = 0; p < shared; ++p) out += from_a(p) ? sa[p] : sb[p];
    const auto& tail = tail_owner.as_string();
    if (tail.size() > shared) out.append(tail, shared);
    return Value::String(std::move(out));
  }
  const auto& ia = a.items();
  const auto& ib = b.items();
  Value::Items out;
  out.reserve(std::max(ia.size(), ib.size()));
  for (size_t p = 0; p < shared; ++p) out.push_back(from_a(p) ? ia[p] : ib[p]);
  const auto& tail = tail_owner.items();
  for (size_t p = shared; p < tail.size(); ++p) out.push_back(tail[p]);
  return Reseat(a, std::move(out));
}

}  // namespace

Value InnerSinglePoint(const Value& first, const Value& second, size_t cut) {
  RequireSameType(first, second);
  if (first.is_null() || second.is_null()) return cut == 0 ? second : first;
  return Splice(first, second, second, [cut](size_t p) { return p < cut; });
}

Value InnerTwoPoints(const Value& inner, const Value& outer, size_t lo,
                     size_t hi) {
  RequireSameType(inner, outer);
  if (lo > hi) std::swap(lo, hi);
  if (inner.is_null() || outer.is_null()) return lo == hi ? outer : inner;
  return Splice(inner, outer, outer,
                [lo, hi](size_t p) { return p >= lo && p < hi; });
}

Value InnerUniform(const Value& a, const Value& b, Rng& rng) {
  RequireSameType(a, b);
  if (a.is_null() || b.is_null()) return rng.Coin() ? a : b;
  const size_t shared = std::min(PointCount(a), PointCount(b));
  std::vector<bool> picks(shared);
  for (size_t p = 0; p < shared; ++p) picks[p] = rng.Coin();
  const Value& tail_owner = rng.Coin() ? a : b;
  return Splice(a, b, tail_owner, [&picks](size_t p) { return picks[p]; });
}

namespace {

void RequireCompatible(const Individual& p1, const Individual& p2) {
  if (p1.method != p2.method || p1.inputs.size() != p2.inputs.size()) {
    throw ContractViolation("crossover of individuals for different methods");
  }
}

size_t SharedPoints(const Value& a, const Value& b) {
  return std::min(PointCount(a), PointCount(b));
}

// Random cut in [0, shared points]; null sides get a coin flip between the
// two whole parents.
size_t DrawInnerCut(const Value& a, const Value& b, Rng& rng) {
  if (a.is_null() || b.is_null()) return rng.Coin() ? 0 : 1;
  return rng.Below(SharedPoints(a, b) + 1);
}

}  // namespace

Individual SinglePointCrossover(const Individual& p1, const Individual& p2,
                                size_t cut, size_t inner_cut, IdSource& ids) {
  RequireCompatible(p1, p2);
  const size_t n = p1.inputs.size();
  if (cut > n) throw ContractViolation("crossover cut beyond arity");
  Individual child;
  child.id = ids.Next();
  child.method = p1.method;
  child.inputs.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    if (i < cut) {
      child.inputs.push_back(p1.inputs[i]);
    } else if (i == cut) {
      child.inputs.push_back(
          InnerSinglePoint(p1.inputs[i], p2.inputs[i], inner_cut));
    } else {
      child.inputs.push_back(p2.inputs[i]);
    }
  }
  return child;
}

Individual TwoPointsCrossover(const Individual& p1, const Individual& p2,
                              size_t lo, size_t hi, Rng& rng, IdSource& ids) {
  RequireCompatible(p1, p2);
  const size_t n = p1.inputs.size();
  if (lo > hi) std::swap(lo, hi);
  if (hi > n) throw ContractViolation("crossover cut beyond arity");
  Individual child;
  child.id = ids.Next();
  child.method = p1.method;
  child.inputs.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    const Value& a = p1.inputs[i];
    const Value& b = p2.inputs[i];
    if (i == lo && lo == hi) {
      // Both cuts fall inside the same parameter.
      size_t x, y;
      if (a.is_null() || b.is_null()) {
        x = 0;
        y = rng.Coin() ? 0 : 1;
      } else {
        const size_t shared = SharedPoints(a, b);
        x = rng.Below(shared + 1);
        y = rng.Below(shared + 1);
      }
      child.inputs.push_back(InnerTwoPoints(a, b, x, y));
    } else if (i == lo) {
      // Outer part (p2) before the cut, inner part (p1) after.
      child.inputs.push_back(InnerSinglePoint(b, a, DrawInnerCut(a, b, rng)));
    } else if (i == hi) {
      child.inputs.push_back(InnerSinglePoint(a, b, DrawInnerCut(a, b, rng)));
    } else if (i > lo && i < hi) {
      child.inputs.push_back(a);
    } else {
      child.inputs.push_back(b);
    }
  }
  return child;
}

Individual UniformCrossover(const Individual& p1, const Individual& p2,
                            Rng& rng, IdSource& ids) {
  RequireCompatible(p1, p2);
  const size_t n = p1.inputs.size();
  Individual child;
  child.id = ids.Next();
  child.method = p1.method;
  child.inputs.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    child.inputs.push_back(rng.Coin() ? p1.inputs[i] : p2.inputs[i]);
  }
  if (n > 0) {
    size_t j = rng.Below(n);
    child.inputs[j] = InnerUniform(p1.inputs[j], p2.inputs[j], rng);
  }
  return child;
}

Individual Crossover(CrossoverKind kind, const Individual& p1,
                     const Individual& p2, Rng& rng, IdSource& ids) {
  RequireCompatible(p1, p2);
  const size_t n = p1.inputs.size();
  switch (kind) {
    case CrossoverKind::kSinglePoint: {
      size_t cut = rng.Below(n + 1);
      size_t inner = cut < n ? DrawInnerCut(p1.inputs[cut], p2.inputs[cut], rng)
                             : 0;
      return SinglePointCrossover(p1, p2, cut, inner, ids);
    }
    case CrossoverKind::kTwoPoints: {
      size_t lo = rng.Below(n + 1);
      size_t hi = rng.Below(n + 1);
      return TwoPointsCrossover(p1, p2, lo, hi, rng, ids);
    }
    case CrossoverKind::kUniform:
      return UniformCrossover(p1, p2, rng, ids);
  }
  throw ContractViolation("unknown crossover kind");
}

Individual Crossover(const Individual& p1, const Individual& p2, Rng& rng,
                     IdSource& ids) {
  return Crossover(static_cast<CrossoverKind>(rng.Below(3)), p1, p2, rng, ids);
}

}  // namespace evofuzz
