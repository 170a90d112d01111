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

#ifndef EVOFUZZ_GENOME_H_
#define EVOFUZZ_GENOME_H_

#include <cstddef>
#include <cstdint>
#include <span>

#include "evofuzz/rng.h"
#include "evofuzz/service.h"
#include "evofuzz/value.h"

namespace evofuzz {

// Generation parameters.
inline constexpr double kNullProbability = 0.05;
inline constexpr int kMaxRandomStringLength = 64;
inline constexpr double kMultiByteCharProbability = 0.05;
inline constexpr int kVeryLongStringLength = 4096;
inline constexpr int kMaxInsertedSubstringLength = 16;
inline constexpr int kMaxRandomArrayLength = 8;
inline constexpr int kMaxAddedItems = 4;
// Deltas for add/subtract mutations are drawn from [1, kMaxDelta].
inline constexpr int kMaxDelta = 35;
// Random floats are uniform in [-kFloatRange, kFloatRange], except with
// probability kSpecialFloatProbability where a boundary value is used.
inline constexpr double kFloatRange = 1e6;
inline constexpr double kSpecialFloatProbability = 0.05;

// NUL, '\n', '\r', '"', '\'', '\\', '%', ';', '{', '}', U+202E.
std::span<const char32_t> SpecialCharacters();

Value RandomValue(const ValueType& type, Rng& rng);
Individual RandomIndividual(const MethodSignature& sig, Rng& rng,
                            IdSource& ids);

// Mutation operators, one list per type family.
enum class PrimitiveOp : uint8_t {
  kRandom,
  kZero,
  kOne,
  kMax,
  kMin,
  kAddDelta,
  kSubtractDelta,
  kSpecialChar,  // Char only
};
enum class StringOp : uint8_t {
  kRandom,
  kVeryLong,
  kTruncate,
  kInsertSubstring,
  kRemoveSubstring,
  kSpecialChar,
  kEmpty,
  kNull,
};
enum class ArrayOp : uint8_t {
  kRandom,
  kRemoveItems,
  kAddItems,
  kMutateItem,
  kEmpty,
  kNull,
};
enum class ObjectOp : uint8_t {
  kNull,
  kRegenerate,
  kMutateField,
};

// Integer deltas wrap modulo the bit width of the type.
Value ApplyPrimitiveOp(const Value& v, PrimitiveOp op, Rng& rng);
Value ApplyStringOp(const Value& v, StringOp op, Rng& rng);
Value ApplyArrayOp(const Value& v, ArrayOp op, Rng& rng);
Value ApplyObjectOp(const Value& v, ObjectOp op, Rng& rng);

// Applies one operator drawn uniformly from the list for v's type.
Value MutateValue(const Value& v, Rng& rng);

// Mutates exactly one uniformly chosen input. A zero-arity individual is
// cloned. The result always carries a fresh id.
Individual MutateIndividual(const Individual& ind, Rng& rng, IdSource& ids);

// ---------------------------------------------------------------------------
// Crossover.
//
// Operators work in cascade: first over the parameter vector, then inside
// the parameter sitting on a cut. Inside a value the points are the bits of
// a primitive (most significant first), the characters of a string, the
// elements of an array or the fields of an object. For sequences of
// different length the points range over the shorter one and the tail comes
// from the parent owning the part after the cut. Null values have no points.

enum class CrossoverKind : uint8_t { kSinglePoint, kTwoPoints, kUniform };

// Number of inner points of v (0 for null).
size_t PointCount(const Value& v);

// Points [0, cut) from `first`, the rest from `second`. If either side is
// null the offspring is `second` when cut == 0 and `first` otherwise.
Value InnerSinglePoint(const Value& first, const Value& second, size_t cut);
// Points [lo, hi) from `inner`, the rest from `outer`.
Value InnerTwoPoints(const Value& inner, const Value& outer, size_t lo,
                     size_t hi);
// Each point from either side with probability 1/2.
Value InnerUniform(const Value& a, const Value& b, Rng& rng);

// Explicit-cut forms of the outer operators, used by the randomized entry
// point below and by tests that need to pin the draws.
Individual SinglePointCrossover(const Individual& p1, const Individual& p2,
                                size_t cut, size_t inner_cut, IdSource& ids);
Individual TwoPointsCrossover(const Individual& p1, const Individual& p2,
                              size_t lo, size_t hi, Rng& rng, IdSource& ids);
Individual UniformCrossover(const Individual& p1, const Individual& p2,
                            Rng& rng, IdSource& ids);

// Crossover with a given kind and random cut points.
Individual Crossover(CrossoverKind kind, const Individual& p1,
                     const Individual& p2, Rng& rng, IdSource& ids);
// Crossover with a uniformly drawn kind. Throws ContractViolation when the
// parents target different methods or have different arity.
Individual Crossover(const Individual& p1, const Individual& p2, Rng& rng,
                     IdSource& ids);

}  // namespace evofuzz

#endif  // EVOFUZZ_GENOME_H_
