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

#include <limits>

#include "evofuzz/codec.h"
#include "evofuzz/errors.h"
#include "evofuzz/genome.h"
#include "gtest/gtest.h"

namespace evofuzz {
namespace {

using nlohmann::json;

TEST(CodecTest, EncodesArgsOnTheWire) {
  std::vector<Value> args = {Value::Integral(TypeTag::kInteger, 7),
                             Value::String(U"x\n"),
                             Value::NullOf(ValueType::String()),
                             Value::Integral(TypeTag::kChar, U'‮')};
  json j = EncodeArgs(args);
  EXPECT_EQ(j[0], json({{"t", "i32"}, {"v", 7}}));
  EXPECT_EQ(j[1], json({{"t", "string"}, {"v", "x\n"}}));
  EXPECT_EQ(j[2], json({{"t", "string"}, {"v", nullptr}}));
  EXPECT_EQ(DecodeArgs(j), args);
}

TEST(CodecTest, RoundTripsRandomValues) {
  Rng rng(3);
  for (const char* t : {"bool", "i8", "i64", "char", "f32", "f64", "string",
                        "array<object{a:i16,b:array<char>}>"}) {
    ValueType type = ParseTypeExpr(t);
    for (int i = 0; i < 200; ++i) {
      Value v = RandomValue(type, rng);
      EXPECT_EQ(DecodeArg(EncodeArg(v)), v) << t;
    }
  }
}

TEST(CodecTest, NonFiniteFloatsSurviveAsBits) {
  for (double d : {std::numeric_limits<double>::infinity(),
                   std::numeric_limits<double>::quiet_NaN()}) {
    Value v = Value::Double(d);
    json j = EncodeArg(v);
    EXPECT_TRUE(j["v"].is_string());
    EXPECT_EQ(DecodeArg(j), v);
  }
}

TEST(CodecTest, RejectsIllTypedValues) {
  EXPECT_THROW(DecodeArg(json{{"t", "i8"}, {"v", 300}}), ValidationError);
  EXPECT_THROW(DecodeArg(json{{"t", "i32"}, {"v", nullptr}}), ValidationError);
  EXPECT_THROW(DecodeArg(json{{"t", "char"}, {"v", "ab"}}), ValidationError);
  EXPECT_THROW(DecodeArg(json{{"t", "object{a:i8}"}, {"v", {{"b", 1}}}}),
               ValidationError);
  EXPECT_THROW(DecodeArg(json{{"v", 1}}), ValidationError);
}

TEST(CodecTest, DescriptorRoundTrips) {
  ServiceDescriptor d{"svc",
                      {{0, "a", {ValueType::Integer()}},
                       {4, "b", {ParseTypeExpr("array<string>"),
                                 ParseTypeExpr("object P{x:f32}")}}}};
  EXPECT_EQ(DecodeDescriptor(EncodeDescriptor(d)), d);
}

TEST(CodecTest, DescriptorErrorsCarryLocation) {
  json j = {{"name", "s"},
            {"methods", {{{"id", 0}, {"name", "m"}, {"params", {"nope"}}}}}};
  try {
    DecodeDescriptor(j);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("methods[0]"), std::string::npos);
  }
  j["methods"] = json::array();
  EXPECT_THROW(DecodeDescriptor(j), ValidationError);
}

TEST(CodecTest, ResponseRoundTrips) {
  ExecutionResult r;
  r.blocks = {"b0", "b1"};
  r.branches = {{"b0→b1", 1}, {"b1→⊥", 1}};
  r.outcome = Outcome::kHandledException;
  r.log = "oops";
  ExecutionResult back = DecodeResponse(EncodeResponse(r));
  EXPECT_EQ(back.blocks, r.blocks);
  EXPECT_EQ(back.branches, r.branches);
  EXPECT_EQ(back.outcome, r.outcome);
  EXPECT_EQ(back.log, r.log);
  EXPECT_THROW(DecodeResponse(json{{"outcome", "weird"}}), ValidationError);
}

TEST(CodecTest, RequestNamesTheMethod) {
  MethodSignature sig{3, "put", {ValueType::Boolean()}};
  json j = EncodeRequest(sig, {Value::Boolean(true)});
  EXPECT_EQ(j["method"], "put");
  WireRequest req = DecodeRequest(j);
  EXPECT_EQ(req.method, "put");
  ASSERT_EQ(req.args.size(), 1u);
  EXPECT_TRUE(req.args[0].as_bool());
}

}  // namespace
}  // namespace evofuzz
