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

#include "evofuzz/value.h"

#include <bit>
#include <cctype>
#include <cstring>
#include <limits>
#include <set>
#include <utility>

#include "evofuzz/errors.h"

namespace evofuzz {

struct ValueType::Node {
  TypeTag tag = TypeTag::kBoolean;
  std::vector<ValueType> element;  // size 1 for arrays
  std::string class_name;
  std::vector<Field> fields;
};

const std::shared_ptr<const ValueType::Node>& ValueType::PrimitiveNode(
    TypeTag tag) {
  static const auto* nodes = [] {
    auto* table = new std::vector<std::shared_ptr<const ValueType::Node>>();
    for (int t = 0; t <= static_cast<int>(TypeTag::kString); ++t) {
      auto node = std::make_shared<ValueType::Node>();
      node->tag = static_cast<TypeTag>(t);
      table->push_back(std::move(node));
    }
    return table;
  }();
  return (*nodes)[static_cast<size_t>(tag)];
}

ValueType::ValueType() : node_(PrimitiveNode(TypeTag::kBoolean)) {}

ValueType::ValueType(std::shared_ptr<const Node> node)
    : node_(std::move(node)) {}

ValueType ValueType::Primitive(TypeTag tag) {
  if (tag > TypeTag::kString) {
    throw ContractViolation("ValueType::Primitive: not a primitive tag");
  }
  return ValueType(PrimitiveNode(tag));
}

ValueType ValueType::String() { return Primitive(TypeTag::kString); }

ValueType ValueType::Array(ValueType element) {
  auto node = std::make_shared<Node>();
  node->tag = TypeTag::kArray;
  node->element.push_back(std::move(element));
  return ValueType(std::move(node));
}

ValueType ValueType::Object(std::string class_name, std::vector<Field> fields) {
  std::set<std::string_view> seen;
  for (const Field& f : fields) {
    if (f.name.empty()) throw ValidationError("object field with empty name");
    if (!seen.insert(f.name).second) {
      throw ValidationError("duplicate object field '" + f.name + "'");
    }
  }
  auto node = std::make_shared<Node>();
  node->tag = TypeTag::kObject;
  node->class_name = std::move(class_name);
  node->fields = std::move(fields);
  return ValueType(std::move(node));
}

TypeTag ValueType::tag() const { return node_->tag; }

const ValueType& ValueType::element() const {
  if (node_->tag != TypeTag::kArray) {
    throw ContractViolation("ValueType::element on non-array");
  }
  return node_->element.front();
}

const std::string& ValueType::class_name() const { return node_->class_name; }

std::span<const ValueType::Field> ValueType::fields() const {
  return node_->fields;
}

int ValueType::FieldIndex(std::string_view name) const {
  for (size_t i = 0; i < node_->fields.size(); ++i) {
    if (node_->fields[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

bool ValueType::IsIntegral() const {
  switch (tag()) {
    case TypeTag::kBoolean:
    case TypeTag::kByte:
    case TypeTag::kChar:
    case TypeTag::kShort:
    case TypeTag::kInteger:
    case TypeTag::kLong:
      return true;
    default:
      return false;
  }
}

bool operator==(const ValueType& a, const ValueType& b) {
  if (a.node_ == b.node_) return true;
  if (a.tag() != b.tag()) return false;
  switch (a.tag()) {
    case TypeTag::kArray:
      return a.element() == b.element();
    case TypeTag::kObject: {
      if (a.class_name() != b.class_name()) return false;
      auto fa = a.fields();
      auto fb = b.fields();
      if (fa.size() != fb.size()) return false;
      for (size_t i = 0; i < fa.size(); ++i) {
        if (fa[i].name != fb[i].name || !(fa[i].type == fb[i].type)) {
          return false;
        }
      }
      return true;
    }
    default:
      return true;
  }
}

// ---------------------------------------------------------------------------
// Type expressions.

namespace {

class TypeExprParser {
 public:
  explicit TypeExprParser(std::string_view text) : text_(text) {}

  ValueType ParseAll() {
    ValueType t = Parse(0);
    SkipSpace();
    if (pos_ != text_.size()) Fail("trailing characters");
    return t;
  }

 private:
  static constexpr int kMaxDepth = 32;

  [[noreturn]] void Fail(const std::string& what) const {
    throw ValidationError("type expression '" + std::string(text_) +
                          "': " + what + " at offset " +
                          std::to_string(pos_));
  }

  void SkipSpace() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  std::string_view Identifier() {
    SkipSpace();
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_' || text_[pos_] == '.' || text_[pos_] == '$')) {
      ++pos_;
    }
    return text_.substr(start, pos_ - start);
  }

  void Expect(char c) {
    SkipSpace();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      Fail(std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  bool Peek(char c) {
    SkipSpace();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  ValueType Parse(int depth) {
    if (depth > kMaxDepth) Fail("nesting too deep");
    std::string_view word = Identifier();
    if (word == "bool") return ValueType::Boolean();
    if (word == "i8") return ValueType::Byte();
    if (word == "i16") return ValueType::Short();
    if (word == "i32") return ValueType::Integer();
    if (word == "i64") return ValueType::Long();
    if (word == "char") return ValueType::Char();
    if (word == "f32") return ValueType::Float();
    if (word == "f64") return ValueType::Double();
    if (word == "string") return ValueType::String();
    if (word == "array") {
      Expect('<');
      ValueType element = Parse(depth + 1);
      Expect('>');
      return ValueType::Array(std::move(element));
    }
    if (word == "object") {
      std::string class_name;
      if (!Peek('{')) class_name = std::string(Identifier());
      Expect('{');
      std::vector<ValueType::Field> fields;
      if (!Peek('}')) {
        while (true) {
          std::string_view name = Identifier();
          if (name.empty()) Fail("expected field name");
          Expect(':');
          fields.push_back({std::string(name), Parse(depth + 1)});
          if (Peek(',')) {
            ++pos_;
            continue;
          }
          break;
        }
      }
      Expect('}');
      try {
        return ValueType::Object(std::move(class_name), std::move(fields));
      } catch (const ValidationError& e) {
        Fail(e.what());
      }
    }
    Fail(word.empty() ? "expected a type" : "unknown type '" +
                                                std::string(word) + "'");
  }

  std::string_view text_;
  size_t pos_ = 0;
};

void FormatInto(const ValueType& t, std::string& out) {
  switch (t.tag()) {
    case TypeTag::kBoolean: out += "bool"; return;
    case TypeTag::kByte: out += "i8"; return;
    case TypeTag::kShort: out += "i16"; return;
    case TypeTag::kInteger: out += "i32"; return;
    case TypeTag::kLong: out += "i64"; return;
    case TypeTag::kChar: out += "char"; return;
    case TypeTag::kFloat: out += "f32"; return;
    case TypeTag::kDouble: out += "f64"; return;
    case TypeTag::kString: out += "string"; return;
    case TypeTag::kArray:
      out += "array<";
      FormatInto(t.element(), out);
      out += '>';
      return;
    case TypeTag::kObject: {
      out += "object";
      if (!t.class_name().empty()) {
        out += ' ';
        out += t.class_name();
      }
      out += '{';
      bool first = true;
      for (const auto& f : t.fields()) {
        if (!first) out += ',';
        first = false;
        out += f.name;
        out += ':';
        FormatInto(f.type, out);
      }
      out += '}';
      return;
    }
  }
}

}  // namespace

ValueType ParseTypeExpr(std::string_view text) {
  return TypeExprParser(text).ParseAll();
}

std::string FormatTypeExpr(const ValueType& type) {
  std::string out;
  FormatInto(type, out);
  return out;
}

// ---------------------------------------------------------------------------
// Primitive ranges.

int BitWidth(TypeTag tag) {
  switch (tag) {
    case TypeTag::kBoolean: return 1;
    case TypeTag::kByte: return 8;
    case TypeTag::kShort: return 16;
    case TypeTag::kChar: return 21;
    case TypeTag::kInteger: return 32;
    case TypeTag::kLong: return 64;
    case TypeTag::kFloat: return 32;
    case TypeTag::kDouble: return 64;
    default:
      throw ContractViolation("BitWidth: not a primitive tag");
  }
}

int64_t IntegralMin(TypeTag tag) {
  switch (tag) {
    case TypeTag::kBoolean: return 0;
    case TypeTag::kChar: return 0;
    case TypeTag::kByte: return std::numeric_limits<int8_t>::min();
    case TypeTag::kShort: return std::numeric_limits<int16_t>::min();
    case TypeTag::kInteger: return std::numeric_limits<int32_t>::min();
    case TypeTag::kLong: return std::numeric_limits<int64_t>::min();
    default:
      throw ContractViolation("IntegralMin: not an integral tag");
  }
}

int64_t IntegralMax(TypeTag tag) {
  switch (tag) {
    case TypeTag::kBoolean: return 1;
    case TypeTag::kChar: return 0x10FFFF;
    case TypeTag::kByte: return std::numeric_limits<int8_t>::max();
    case TypeTag::kShort: return std::numeric_limits<int16_t>::max();
    case TypeTag::kInteger: return std::numeric_limits<int32_t>::max();
    case TypeTag::kLong: return std::numeric_limits<int64_t>::max();
    default:
      throw ContractViolation("IntegralMax: not an integral tag");
  }
}

bool IsUnicodeScalar(int64_t cp) {
  return cp >= 0 && cp <= 0x10FFFF && !(cp >= 0xD800 && cp <= 0xDFFF);
}

int64_t FoldToScalar(int64_t cp) {
  int64_t v = cp % 0x110000;
  if (v < 0) v += 0x110000;
  if (v >= 0xD800 && v <= 0xDFFF) v -= 0x800;
  return v;
}

// ---------------------------------------------------------------------------
// Value.

Value::Value() : type_(ValueType::Boolean()), payload_(int64_t{0}) {}

Value Value::Boolean(bool b) {
  return Value(ValueType::Boolean(), int64_t{b ? 1 : 0});
}

Value Value::Integral(TypeTag tag, int64_t v) {
  ValueType t = ValueType::Primitive(tag);
  if (!t.IsIntegral()) {
    throw ContractViolation("Value::Integral: tag is not integral");
  }
  if (tag == TypeTag::kChar ? !IsUnicodeScalar(v)
                            : (v < IntegralMin(tag) || v > IntegralMax(tag))) {
    throw ContractViolation("Value::Integral: " + std::to_string(v) +
                            " out of range for " + FormatTypeExpr(t));
  }
  return Value(std::move(t), v);
}

Value Value::Float(float f) { return Value(ValueType::Float(), f); }

Value Value::Double(double d) { return Value(ValueType::Double(), d); }

Value Value::String(std::u32string s) {
  for (char32_t c : s) {
    if (!IsUnicodeScalar(c)) {
      throw ContractViolation("Value::String: invalid scalar value");
    }
  }
  return Value(ValueType::String(), std::move(s));
}

Value Value::Array(ValueType type, Items items) {
  if (type.tag() != TypeTag::kArray) {
    throw ContractViolation("Value::Array: type is not an array");
  }
  return Value(std::move(type), std::move(items));
}

Value Value::Object(ValueType type, Items fields) {
  if (type.tag() != TypeTag::kObject || fields.size() != type.fields().size()) {
    throw ContractViolation("Value::Object: field list does not match type");
  }
  return Value(std::move(type), std::move(fields));
}

Value Value::NullOf(ValueType type) {
  if (!type.IsNullable()) {
    throw ContractViolation("Value::NullOf: primitive types are never null");
  }
  return Value(std::move(type), Null{});
}

uint64_t Value::Bits() const {
  switch (tag()) {
    case TypeTag::kFloat:
      return std::bit_cast<uint32_t>(as_float());
    case TypeTag::kDouble:
      return std::bit_cast<uint64_t>(as_double());
    case TypeTag::kBoolean:
    case TypeTag::kByte:
    case TypeTag::kShort:
    case TypeTag::kChar:
    case TypeTag::kInteger:
    case TypeTag::kLong: {
      int width = BitWidth(tag());
      uint64_t raw = static_cast<uint64_t>(as_int());
      return width == 64 ? raw : raw & ((uint64_t{1} << width) - 1);
    }
    default:
      throw ContractViolation("Value::Bits on non-primitive");
  }
}

Value Value::FromBits(TypeTag tag, uint64_t bits) {
  switch (tag) {
    case TypeTag::kFloat:
      return Float(std::bit_cast<float>(static_cast<uint32_t>(bits)));
    case TypeTag::kDouble:
      return Double(std::bit_cast<double>(bits));
    case TypeTag::kBoolean:
      return Boolean((bits & 1) != 0);
    case TypeTag::kChar:
      return Integral(tag, FoldToScalar(static_cast<int64_t>(
                               bits & ((uint64_t{1} << 21) - 1))));
    case TypeTag::kByte:
      return Integral(tag, static_cast<int8_t>(bits));
    case TypeTag::kShort:
      return Integral(tag, static_cast<int16_t>(bits));
    case TypeTag::kInteger:
      return Integral(tag, static_cast<int32_t>(bits));
    case TypeTag::kLong:
      return Integral(tag, static_cast<int64_t>(bits));
    default:
      throw ContractViolation("Value::FromBits on non-primitive tag");
  }
}

bool operator==(const Value& a, const Value& b) {
  if (!(a.type_ == b.type_)) return false;
  if (a.payload_.index() != b.payload_.index()) return false;
  if (a.tag() == TypeTag::kFloat || a.tag() == TypeTag::kDouble) {
    return a.Bits() == b.Bits();
  }
  return a.payload_ == b.payload_;
}

bool Conforms(const Value& v, const ValueType& t) {
  if (!(v.type() == t)) return false;
  if (v.is_null()) return t.IsNullable();
  switch (t.tag()) {
    case TypeTag::kBoolean:
    case TypeTag::kByte:
    case TypeTag::kShort:
    case TypeTag::kInteger:
    case TypeTag::kLong:
      return v.as_int() >= IntegralMin(t.tag()) &&
             v.as_int() <= IntegralMax(t.tag());
    case TypeTag::kChar:
      return IsUnicodeScalar(v.as_int());
    case TypeTag::kFloat:
    case TypeTag::kDouble:
      return true;
    case TypeTag::kString:
      for (char32_t c : v.as_string()) {
        if (!IsUnicodeScalar(c)) return false;
      }
      return true;
    case TypeTag::kArray:
      for (const Value& item : v.items()) {
        if (!Conforms(item, t.element())) return false;
      }
      return true;
    case TypeTag::kObject: {
      auto fields = t.fields();
      if (v.items().size() != fields.size()) return false;
      for (size_t i = 0; i < fields.size(); ++i) {
        if (!Conforms(v.items()[i], fields[i].type)) return false;
      }
      return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// UTF-8.

std::string ToUtf8(std::u32string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t c : s) {
    if (c < 0x80) {
      out += static_cast<char>(c);
    } else if (c < 0x800) {
      out += static_cast<char>(0xC0 | (c >> 6));
      out += static_cast<char>(0x80 | (c & 0x3F));
    } else if (c < 0x10000) {
      out += static_cast<char>(0xE0 | (c >> 12));
      out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (c & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (c >> 18));
      out += static_cast<char>(0x80 | ((c >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (c & 0x3F));
    }
  }
  return out;
}

std::u32string FromUtf8(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  size_t i = 0;
  auto fail = [&] {
    throw ValidationError("malformed UTF-8 at byte " + std::to_string(i));
  };
  while (i < s.size()) {
    auto b0 = static_cast<unsigned char>(s[i]);
    int extra;
    char32_t cp;
    if (b0 < 0x80) {
      extra = 0;
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      extra = 1;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      extra = 2;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      extra = 3;
      cp = b0 & 0x07;
    } else {
      fail();
    }
    if (extra > 0 && i + static_cast<size_t>(extra) >= s.size()) fail();
    for (int k = 1; k <= extra; ++k) {
      auto b = static_cast<unsigned char>(s[i + k]);
      if ((b & 0xC0) != 0x80) fail();
      cp = (cp << 6) | (b & 0x3F);
    }
    static constexpr char32_t kMinForLength[] = {0, 0x80, 0x800, 0x10000};
    if (cp < kMinForLength[extra] || !IsUnicodeScalar(cp)) fail();
    out += cp;
    i += static_cast<size_t>(extra) + 1;
  }
  return out;
}

}  // namespace evofuzz
