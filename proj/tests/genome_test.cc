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

#include <set>

#include "evofuzz/errors.h"
#include "evofuzz/genome.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace evofuzz {
namespace {

Individual Make(MethodId m, std::vector<Value> inputs, TestId id = 0) {
  return Individual{id, m, std::move(inputs)};
}

Value Int(int64_t v) { return Value::Integral(TypeTag::kInteger, v); }
Value Str(std::u32string s) { return Value::String(std::move(s)); }

TEST(RandomValueTest, BooleanCoversItsCodomain) {
  Rng rng(1);
  std::set<bool> seen;
  for (int i = 0; i < 100; ++i) seen.insert(RandomValue(ValueType::Boolean(), rng).as_bool());
  EXPECT_EQ(seen.size(), 2u);
}

TEST(RandomValueTest, ArraysHoldElementsOfTheirType) {
  Rng rng(2);
  ValueType t = ValueType::Array(ValueType::Integer());
  for (int i = 0; i < 200; ++i) {
    Value v = RandomValue(t, rng);
    ASSERT_TRUE(Conforms(v, t));
    if (v.is_null()) continue;
    EXPECT_LE(v.items().size(), static_cast<size_t>(kMaxRandomArrayLength));
    for (const auto& e : v.items()) EXPECT_EQ(e.tag(), TypeTag::kInteger);
  }
}

TEST(RandomValueTest, DeterministicForSeed) {
  ValueType t = ParseTypeExpr("object{a:string,b:array<f64>,c:char}");
  Rng a(42), b(42);
  for (int i = 0; i < 50; ++i) EXPECT_EQ(RandomValue(t, a), RandomValue(t, b));
}

TEST(RandomValueTest, CharsAreScalarsAndFloatsFinite) {
  Rng rng(5);
  for (int i = 0; i < 5000; ++i) {
    EXPECT_TRUE(IsUnicodeScalar(RandomValue(ValueType::Char(), rng).as_int()));
    EXPECT_TRUE(std::isfinite(RandomValue(ValueType::Double(), rng).as_double()));
  }
}

TEST(RandomIndividualTest, MatchesSignature) {
  Rng rng(3);
  IdSource ids;
  MethodSignature none{0, "f", {}};
  EXPECT_TRUE(RandomIndividual(none, rng, ids).inputs.empty());
  MethodSignature three{1, "g", {ValueType::String(), ValueType::Integer(),
                                 ValueType::Integer()}};
  std::set<TestId> seen;
  for (int i = 0; i < 10; ++i) {
    Individual ind = RandomIndividual(three, rng, ids);
    EXPECT_EQ(ind.inputs.size(), 3u);
    EXPECT_TRUE(ValidateIndividual(ind, three));
    seen.insert(ind.id);
  }
  EXPECT_EQ(seen.size(), 10u);
}

TEST(ValidateIndividualTest, ArityTypesAndNulls) {
  MethodSignature ii{0, "f", {ValueType::Integer(), ValueType::Integer()}};
  EXPECT_TRUE(ValidateIndividual(Make(0, {Int(1), Int(2)}), ii));
  EXPECT_FALSE(ValidateIndividual(Make(0, {Int(1)}), ii));
  EXPECT_FALSE(ValidateIndividual(Make(1, {Int(1), Int(2)}), ii));
  MethodSignature s{0, "f", {ValueType::String()}};
  EXPECT_TRUE(ValidateIndividual(Make(0, {Value::NullOf(ValueType::String())}), s));
}

TEST(MutationTest, SpecificOperators) {
  Rng rng(4);
  EXPECT_EQ(ApplyPrimitiveOp(Int(42), PrimitiveOp::kZero, rng), Int(0));
  EXPECT_EQ(ApplyPrimitiveOp(Int(42), PrimitiveOp::kOne, rng), Int(1));
  EXPECT_EQ(ApplyPrimitiveOp(Int(42), PrimitiveOp::kMax, rng), Int(INT32_MAX));
  EXPECT_EQ(ApplyStringOp(Str(U"abc"), StringOp::kEmpty, rng), Str(U""));
  EXPECT_TRUE(ApplyStringOp(Str(U"abc"), StringOp::kNull, rng).is_null());
  EXPECT_EQ(ApplyStringOp(Str(U"abc"), StringOp::kVeryLong, rng).as_string().size(),
            static_cast<size_t>(kVeryLongStringLength));
}

TEST(MutationTest, AddDeltaWrapsModuloBitWidth) {
  Rng rng(6);
  const Value top = Value::Integral(TypeTag::kByte, 127);
  for (int i = 0; i < 200; ++i) {
    int64_t v = ApplyPrimitiveOp(top, PrimitiveOp::kAddDelta, rng).as_int();
    // 127 + d for d in [1, kMaxDelta] wraps to -128 + (d - 1).
    EXPECT_GE(v, -128);
    EXPECT_LE(v, -128 + kMaxDelta - 1);
  }
  const Value bottom = Value::Integral(TypeTag::kByte, -128);
  for (int i = 0; i < 200; ++i) {
    int64_t v = ApplyPrimitiveOp(bottom, PrimitiveOp::kSubtractDelta, rng).as_int();
    EXPECT_LE(v, 127);
    EXPECT_GE(v, 127 - kMaxDelta + 1);
  }
}

TEST(MutationTest, TruncateAndSubstringOpsStayWithinBounds) {
  Rng rng(7);
  const Value s = Str(U"hello world");
  for (int i = 0; i < 200; ++i) {
    EXPECT_LE(ApplyStringOp(s, StringOp::kTruncate, rng).as_string().size(), 11u);
    EXPECT_LE(ApplyStringOp(s, StringOp::kRemoveSubstring, rng).as_string().size(), 11u);
    size_t grown = ApplyStringOp(s, StringOp::kInsertSubstring, rng).as_string().size();
    EXPECT_GT(grown, 11u);
    EXPECT_LE(grown, 11u + kMaxInsertedSubstringLength);
  }
}

TEST(MutationTest, SpecialCharacterReplacesOne) {
  Rng rng(8);
  std::set<char32_t> specials(SpecialCharacters().begin(), SpecialCharacters().end());
  for (int i = 0; i < 100; ++i) {
    std::u32string out = ApplyStringOp(Str(U"abc"), StringOp::kSpecialChar, rng).as_string();
    ASSERT_EQ(out.size(), 3u);  // replaces, never inserts
    bool found = false;
    for (char32_t c : out) found |= specials.count(c) > 0;
    EXPECT_TRUE(found);
  }
}

TEST(MutationTest, ArrayOperators) {
  Rng rng(9);
  ValueType t = ValueType::Array(ValueType::Short());
  Value v = Value::Array(t, {Value::Integral(TypeTag::kShort, 1),
                             Value::Integral(TypeTag::kShort, 2)});
  EXPECT_TRUE(ApplyArrayOp(v, ArrayOp::kEmpty, rng).items().empty());
  EXPECT_TRUE(ApplyArrayOp(v, ArrayOp::kNull, rng).is_null());
  for (int i = 0; i < 100; ++i) {
    size_t added = ApplyArrayOp(v, ArrayOp::kAddItems, rng).items().size();
    EXPECT_GE(added, 3u);
    EXPECT_LE(added, 2u + kMaxAddedItems);
    EXPECT_LT(ApplyArrayOp(v, ArrayOp::kRemoveItems, rng).items().size(), 2u);
    Value m = ApplyArrayOp(v, ArrayOp::kMutateItem, rng);
    EXPECT_EQ(m.items().size(), 2u);
    EXPECT_TRUE(Conforms(m, t));
  }
}

TEST(MutationTest, ObjectOperators) {
  Rng rng(10);
  ValueType t = ParseTypeExpr("object{a:i8,b:string}");
  Value v = RandomValue(t, rng);
  while (v.is_null()) v = RandomValue(t, rng);
  EXPECT_TRUE(ApplyObjectOp(v, ObjectOp::kNull, rng).is_null());
  for (int i = 0; i < 100; ++i) {
    Value m = ApplyObjectOp(v, ObjectOp::kMutateField, rng);
    ASSERT_TRUE(Conforms(m, t));
    int changed = (m.items()[0] == v.items()[0] ? 0 : 1) +
                  (m.items()[1] == v.items()[1] ? 0 : 1);
    EXPECT_LE(changed, 1);
  }
}

TEST(MutationTest, NullInputsStartFromEmpty) {
  Rng rng(11);
  Value n = Value::NullOf(ValueType::String());
  EXPECT_FALSE(ApplyStringOp(n, StringOp::kInsertSubstring, rng).is_null());
  Value na = Value::NullOf(ValueType::Array(ValueType::Byte()));
  EXPECT_FALSE(ApplyArrayOp(na, ArrayOp::kAddItems, rng).is_null());
}

TEST(MutateIndividualTest, ChangesAtMostOnePosition) {
  Rng rng(12);
  IdSource ids(100);
  Individual parent = Make(0, {Str(U"a"), Int(1)}, 7);
  for (int i = 0; i < 500; ++i) {
    Individual child = MutateIndividual(parent, rng, ids);
    EXPECT_NE(child.id, parent.id);
    int diffs = 0;
    for (size_t k = 0; k < 2; ++k) diffs += child.inputs[k] == parent.inputs[k] ? 0 : 1;
    EXPECT_LE(diffs, 1);
  }
}

TEST(MutateIndividualTest, ZeroArityIsCloned) {
  Rng rng(13);
  IdSource ids(5);
  Individual parent = Make(3, {}, 1);
  Individual child = MutateIndividual(parent, rng, ids);
  EXPECT_TRUE(child.SameContent(parent));
  EXPECT_EQ(child.id, 5u);
}

TEST(MutateIndividualTest, DeterministicForSeed) {
  Rng c(77), d(77);
  IdSource ic, id;
  Individual x = Make(0, {Str(U"seed"), Int(9)}), y = x;
  for (int i = 0; i < 100; ++i) {
    x = MutateIndividual(x, c, ic);
    y = MutateIndividual(y, d, id);
    ASSERT_TRUE(x.SameContent(y));
  }
}

TEST(CrossoverTest, SinglePointWorkedExample) {
  IdSource ids;
  Individual p1 = Make(0, {Str(U"aa"), Int(1), Int(2)});
  Individual p2 = Make(0, {Str(U"bb"), Int(9), Int(8)});
  Individual child = SinglePointCrossover(p1, p2, 0, 1, ids);
  EXPECT_EQ(child.inputs[0], Str(U"ab"));
  EXPECT_EQ(child.inputs[1], Int(9));
  EXPECT_EQ(child.inputs[2], Int(8));
}

TEST(CrossoverTest, InnerSinglePointOnBits) {
  // Points are bits, most significant first: the top 4 bits of 0xF0 with
  // the low 4 bits of 0x0F.
  Value a = Value::Integral(TypeTag::kShort, 0x00F0);
  Value b = Value::Integral(TypeTag::kShort, 0x0F0F);
  EXPECT_EQ(InnerSinglePoint(a, b, 12).as_int(), 0x00FF);
  EXPECT_EQ(InnerSinglePoint(a, b, 0), b);
  EXPECT_EQ(InnerSinglePoint(a, b, 16), a);
}

TEST(CrossoverTest, UnequalLengthsTakeTailFromPostCutParent) {
  Value shorter = Str(U"xy");
  Value longer = Str(U"abcdef");
  EXPECT_EQ(InnerSinglePoint(shorter, longer, 1), Str(U"xbcdef"));
  EXPECT_EQ(InnerSinglePoint(longer, shorter, 1), Str(U"ay"));
  EXPECT_EQ(InnerTwoPoints(shorter, longer, 0, 1), Str(U"xbcdef"));
}

TEST(CrossoverTest, NullSidesTakeOneParentWhole) {
  Value n = Value::NullOf(ValueType::String());
  Value s = Str(U"abc");
  EXPECT_EQ(InnerSinglePoint(n, s, 0), s);
  EXPECT_TRUE(InnerSinglePoint(n, s, 1).is_null());
  EXPECT_EQ(InnerSinglePoint(s, n, 1), s);
}

TEST(CrossoverTest, EqualParentsAreContentPreserving) {
  Rng rng(14);
  IdSource ids;
  MethodSignature sig{0, "f", {ParseTypeExpr("string"), ParseTypeExpr("f32"),
                               ParseTypeExpr("array<object{a:i64}>")}};
  for (int i = 0; i < 300; ++i) {
    Individual p = RandomIndividual(sig, rng, ids);
    for (auto kind : {CrossoverKind::kSinglePoint, CrossoverKind::kTwoPoints,
                      CrossoverKind::kUniform}) {
      EXPECT_TRUE(Crossover(kind, p, p, rng, ids).SameContent(p));
    }
  }
}

TEST(CrossoverTest, TwoPointsWithEqualCutsKeepsSecondParentElsewhere) {
  Rng rng(15);
  IdSource ids;
  MethodSignature sig{0, "f", {ValueType::Integer(), ValueType::String(),
                               ValueType::Long(), ValueType::Byte()}};
  for (int i = 0; i < 500; ++i) {
    Individual p1 = RandomIndividual(sig, rng, ids);
    Individual p2 = RandomIndividual(sig, rng, ids);
    size_t c = rng.Below(5);
    Individual child = TwoPointsCrossover(p1, p2, c, c, rng, ids);
    for (size_t k = 0; k < 4; ++k) {
      if (k != c) EXPECT_EQ(child.inputs[k], p2.inputs[k]);
    }
  }
}

TEST(CrossoverTest, RejectsMismatchedParents) {
  Rng rng(16);
  IdSource ids;
  EXPECT_THROW(Crossover(Make(0, {Int(1)}), Make(1, {Int(1)}), rng, ids),
               ContractViolation);
  EXPECT_THROW(Crossover(Make(0, {Int(1)}), Make(0, {}), rng, ids),
               ContractViolation);
}

TEST(OperatorPropertyTest, RandomSignaturesStayValid) {
  Rng rng(17);
  IdSource ids;
  for (int round = 0; round < 200; ++round) {
    MethodSignature sig = testing_util::RandomSignature(rng, 0);
    Individual a = RandomIndividual(sig, rng, ids);
    Individual b = RandomIndividual(sig, rng, ids);
    for (int i = 0; i < 20; ++i) {
      a = MutateIndividual(a, rng, ids);
      ASSERT_TRUE(ValidateIndividual(a, sig));
      b = Crossover(a, b, rng, ids);
      ASSERT_TRUE(ValidateIndividual(b, sig));
    }
  }
}

}  // namespace
}  // namespace evofuzz
