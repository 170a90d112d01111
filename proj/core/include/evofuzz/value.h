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

#ifndef EVOFUZZ_VALUE_H_
#define EVOFUZZ_VALUE_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace evofuzz {

enum class TypeTag : uint8_t {
  kBoolean,
  kByte,
  kChar,
  kShort,
  kInteger,
  kLong,
  kFloat,
  kDouble,
  kString,
  kArray,
  kObject,
};

// Shared handle to an immutable type tree. Copies are cheap.
class ValueType {
 public:
  struct Field;

  // Defaults to Boolean.
  ValueType();

  static ValueType Primitive(TypeTag tag);
  static ValueType Boolean() { return Primitive(TypeTag::kBoolean); }
  static ValueType Byte() { return Primitive(TypeTag::kByte); }
  static ValueType Char() { return Primitive(TypeTag::kChar); }
  static ValueType Short() { return Primitive(TypeTag::kShort); }
  static ValueType Integer() { return Primitive(TypeTag::kInteger); }
  static ValueType Long() { return Primitive(TypeTag::kLong); }
  static ValueType Float() { return Primitive(TypeTag::kFloat); }
  static ValueType Double() { return Primitive(TypeTag::kDouble); }
  static ValueType String();
  static ValueType Array(ValueType element);
  // Throws ValidationError on duplicate field names.
  static ValueType Object(std::string class_name, std::vector<Field> fields);

  TypeTag tag() const;
  // Only valid for arrays.
  const ValueType& element() const;
  // Only meaningful for objects; empty otherwise.
  const std::string& class_name() const;
  std::span<const Field> fields() const;
  // Index of the named field or -1.
  int FieldIndex(std::string_view name) const;

  bool IsPrimitive() const { return tag() < TypeTag::kString; }
  bool IsIntegral() const;
  bool IsFloating() const {
    return tag() == TypeTag::kFloat || tag() == TypeTag::kDouble;
  }
  // String, Array and Object admit the null marker; primitives never do.
  bool IsNullable() const { return !IsPrimitive(); }

  friend bool operator==(const ValueType& a, const ValueType& b);

 private:
  struct Node;
  static const std::shared_ptr<const Node>& PrimitiveNode(TypeTag tag);
  explicit ValueType(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

struct ValueType::Field {
  std::string name;
  ValueType type;
};

// Type expressions: bool|i8|i16|i32|i64|char|f32|f64|string|array<T>|
// object{name:T,...}. A class name may follow the keyword:
// "object Point{x:i32,y:i32}".
ValueType ParseTypeExpr(std::string_view text);
std::string FormatTypeExpr(const ValueType& type);

// Number of crossover points in the binary representation of a primitive.
int BitWidth(TypeTag tag);
// Inclusive bounds for Boolean/Byte/Short/Integer/Long/Char payloads.
int64_t IntegralMin(TypeTag tag);
int64_t IntegralMax(TypeTag tag);
bool IsUnicodeScalar(int64_t code_point);

// A typed datum. Integral types (including Boolean and Char) carry an
// int64_t payload that always fits the tag; arrays and objects carry their
// items, objects in declared field order.
class Value {
 public:
  struct Null {
    friend bool operator==(Null, Null) { return true; }
  };
  using Items = std::vector<Value>;
  using Payload =
      std::variant<Null, int64_t, float, double, std::u32string, Items>;

  Value();  // Boolean false.

  static Value Boolean(bool b);
  // Throws ContractViolation if v does not fit the tag.
  static Value Integral(TypeTag tag, int64_t v);
  static Value Float(float f);
  static Value Double(double d);
  static Value String(std::u32string s);
  static Value Array(ValueType type, Items items);
  static Value Object(ValueType type, Items fields);
  // Throws ContractViolation for primitive types.
  static Value NullOf(ValueType type);

  const ValueType& type() const { return type_; }
  TypeTag tag() const { return type_.tag(); }
  bool is_null() const { return std::holds_alternative<Null>(payload_); }

  bool as_bool() const { return std::get<int64_t>(payload_) != 0; }
  int64_t as_int() const { return std::get<int64_t>(payload_); }
  float as_float() const { return std::get<float>(payload_); }
  double as_double() const { return std::get<double>(payload_); }
  const std::u32string& as_string() const {
    return std::get<std::u32string>(payload_);
  }
  const Items& items() const { return std::get<Items>(payload_); }
  Items& mutable_items() { return std::get<Items>(payload_); }

  // Raw two's-complement or IEEE-754 bits of a primitive, right-aligned.
  uint64_t Bits() const;
  // Inverse of Bits(); Char results are folded back into scalar range.
  static Value FromBits(TypeTag tag, uint64_t bits);

  // Content equality. Floating payloads compare by bit pattern so that NaNs
  // produced by crossover are equal to themselves.
  friend bool operator==(const Value& a, const Value& b);

 private:
  Value(ValueType type, Payload payload)
      : type_(std::move(type)), payload_(std::move(payload)) {}

  ValueType type_;
  Payload payload_;
};

// Deep check that v is a well-formed value of type t.
bool Conforms(const Value& v, const ValueType& t);

// Maps any integer onto a valid Unicode scalar: reduce modulo 0x110000 and
// shift surrogates down by 0x800.
int64_t FoldToScalar(int64_t code_point);

std::string ToUtf8(std::u32string_view s);
// Throws ValidationError on malformed input.
std::u32string FromUtf8(std::string_view s);

}  // namespace evofuzz

#endif  // EVOFUZZ_VALUE_H_
