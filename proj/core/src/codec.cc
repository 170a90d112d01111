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

#include "evofuzz/codec.h"

#include <bit>
#include <cinttypes>
#include <cmath>
#include <cstdio>

#include "evofuzz/errors.h"

namespace evofuzz {

using nlohmann::json;

namespace {

[[noreturn]] void Bad(const ValueType& type, const std::string& what) {
  throw ValidationError("cannot decode " + FormatTypeExpr(type) + ": " + what);
}

std::string HexBits(uint64_t bits, int width) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "0x%0*" PRIx64, width / 4, bits);
  return buf;
}

uint64_t ParseHexBits(const std::string& s, const ValueType& type) {
  if (s.size() < 3 || s[0] != '0' || (s[1] != 'x' && s[1] != 'X')) {
    Bad(type, "expected a number or 0x-prefixed bit pattern");
  }
  uint64_t bits = 0;
  for (size_t i = 2; i < s.size(); ++i) {
    char c = s[i];
    int d;
    if (c >= '0' && c <= '9') {
      d = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      d = c - 'a' + 10;
    } else if (c >= 'A' && c <= 'F') {
      d = c - 'A' + 10;
    } else {
      Bad(type, "bad hex digit in '" + s + "'");
    }
    if (i - 2 >= 16) Bad(type, "bit pattern too long");
    bits = (bits << 4) | static_cast<uint64_t>(d);
  }
  return bits;
}

}  // namespace

json EncodeValue(const Value& v) {
  if (v.is_null()) return nullptr;
  switch (v.tag()) {
    case TypeTag::kBoolean:
      return v.as_bool();
    case TypeTag::kByte:
    case TypeTag::kShort:
    case TypeTag::kInteger:
    case TypeTag::kLong:
      return v.as_int();
    case TypeTag::kChar:
      return ToUtf8(std::u32string(1, static_cast<char32_t>(v.as_int())));
    case TypeTag::kFloat:
      if (std::isfinite(v.as_float())) {
        return static_cast<double>(v.as_float());
      }
      return HexBits(v.Bits(), 32);
    case TypeTag::kDouble:
      if (std::isfinite(v.as_double())) return v.as_double();
      return HexBits(v.Bits(), 64);
    case TypeTag::kString:
      return ToUtf8(v.as_string());
    case TypeTag::kArray: {
      json out = json::array();
      for (const Value& item : v.items()) out.push_back(EncodeValue(item));
      return out;
    }
    case TypeTag::kObject: {
      json out = json::object();
      auto fields = v.type().fields();
      for (size_t i = 0; i < fields.size(); ++i) {
        out[fields[i].name] = EncodeValue(v.items()[i]);
      }
      return out;
    }
  }
  return nullptr;
}

Value DecodeValue(const json& j, const ValueType& type) {
  if (j.is_null()) {
    if (!type.IsNullable()) Bad(type, "null is not allowed for primitives");
    return Value::NullOf(type);
  }
  switch (type.tag()) {
    case TypeTag::kBoolean:
      if (!j.is_boolean()) Bad(type, "expected a boolean");
      return Value::Boolean(j.get<bool>());
    case TypeTag::kByte:
    case TypeTag::kShort:
    case TypeTag::kInteger:
    case TypeTag::kLong: {
      if (!j.is_number_integer()) Bad(type, "expected an integer");
      int64_t v;
      if (j.is_number_unsigned()) {
        uint64_t u = j.get<uint64_t>();
        if (u > static_cast<uint64_t>(INT64_MAX)) Bad(type, "out of range");
        v = static_cast<int64_t>(u);
      } else {
        v = j.get<int64_t>();
      }
      if (v < IntegralMin(type.tag()) || v > IntegralMax(type.tag())) {
        Bad(type, "out of range: " + std::to_string(v));
      }
      return Value::Integral(type.tag(), v);
    }
    case TypeTag::kChar: {
      if (!j.is_string()) Bad(type, "expected a one-character string");
      std::u32string s = FromUtf8(j.get<std::string>());
      if (s.size() != 1) Bad(type, "expected exactly one character");
      return Value::Integral(TypeTag::kChar, s[0]);
    }
    case TypeTag::kFloat:
      if (j.is_number()) return Value::Float(static_cast<float>(j.get<double>()));
      if (j.is_string()) {
        uint64_t bits = ParseHexBits(j.get<std::string>(), type);
        if (bits > UINT32_MAX) Bad(type, "bit pattern wider than 32 bits");
        return Value::FromBits(TypeTag::kFloat, bits);
      }
      Bad(type, "expected a number");
    case TypeTag::kDouble:
      if (j.is_number()) return Value::Double(j.get<double>());
      if (j.is_string()) {
        return Value::FromBits(TypeTag::kDouble,
                               ParseHexBits(j.get<std::string>(), type));
      }
      Bad(type, "expected a number");
    case TypeTag::kString:
      if (!j.is_string()) Bad(type, "expected a string");
      return Value::String(FromUtf8(j.get<std::string>()));
    case TypeTag::kArray: {
      if (!j.is_array()) Bad(type, "expected an array");
      Value::Items items;
      items.reserve(j.size());
      for (const auto& e : j) items.push_back(DecodeValue(e, type.element()));
      return Value::Array(type, std::move(items));
    }
    case TypeTag::kObject: {
      if (!j.is_object()) Bad(type, "expected an object");
      auto fields = type.fields();
      if (j.size() != fields.size()) Bad(type, "field count mismatch");
      Value::Items items;
      items.reserve(fields.size());
      for (const auto& f : fields) {
        auto it = j.find(f.name);
        if (it == j.end()) Bad(type, "missing field '" + f.name + "'");
        items.push_back(DecodeValue(*it, f.type));
      }
      return Value::Object(type, std::move(items));
    }
  }
  Bad(type, "unsupported type");
}

json EncodeArg(const Value& v) {
  return json{{"t", FormatTypeExpr(v.type())}, {"v", EncodeValue(v)}};
}

Value DecodeArg(const json& j) {
  if (!j.is_object() || !j.contains("t") || !j.contains("v") ||
      !j["t"].is_string()) {
    throw ValidationError("argument must be {\"t\": type, \"v\": value}");
  }
  return DecodeValue(j["v"], ParseTypeExpr(j["t"].get<std::string>()));
}

json EncodeArgs(const std::vector<Value>& values) {
  json out = json::array();
  for (const Value& v : values) out.push_back(EncodeArg(v));
  return out;
}

std::vector<Value> DecodeArgs(const json& j) {
  if (!j.is_array()) throw ValidationError("\"args\" must be an array");
  std::vector<Value> out;
  out.reserve(j.size());
  for (const auto& a : j) out.push_back(DecodeArg(a));
  return out;
}

json EncodeDescriptor(const ServiceDescriptor& service) {
  json methods = json::array();
  for (const auto& m : service.methods) {
    json params = json::array();
    for (const auto& p : m.params) params.push_back(FormatTypeExpr(p));
    methods.push_back({{"id", m.id}, {"name", m.name}, {"params", params}});
  }
  return json{{"name", service.name}, {"methods", methods}};
}

ServiceDescriptor DecodeDescriptor(const json& j) {
  ServiceDescriptor out;
  if (!j.is_object()) throw ValidationError("descriptor must be an object");
  if (!j.contains("name") || !j["name"].is_string()) {
    throw ValidationError("name: expected a string");
  }
  out.name = j["name"].get<std::string>();
  if (!j.contains("methods") || !j["methods"].is_array()) {
    throw ValidationError("methods: expected an array");
  }
  const json& methods = j["methods"];
  for (size_t i = 0; i < methods.size(); ++i) {
    const json& m = methods[i];
    const std::string where = "methods[" + std::to_string(i) + "]";
    try {
      if (!m.is_object()) throw ValidationError("expected an object");
      if (!m.contains("id") || !m["id"].is_number_integer() ||
          m["id"].get<int64_t>() < 0) {
        throw ValidationError("id: expected a nonnegative integer");
      }
      if (m["id"].get<int64_t>() > int64_t{UINT32_MAX}) {
        throw ValidationError("id: out of range");
      }
      MethodSignature sig;
      sig.id = m["id"].get<MethodId>();
      if (!m.contains("name") || !m["name"].is_string()) {
        throw ValidationError("name: expected a string");
      }
      sig.name = m["name"].get<std::string>();
      if (!m.contains("params") || !m["params"].is_array()) {
        throw ValidationError("params: expected an array of type expressions");
      }
      for (const auto& p : m["params"]) {
        if (!p.is_string()) {
          throw ValidationError("params: expected type expression strings");
        }
        sig.params.push_back(ParseTypeExpr(p.get<std::string>()));
      }
      out.methods.push_back(std::move(sig));
    } catch (const ValidationError& e) {
      throw ValidationError(where + ": " + e.what());
    }
  }
  ValidateDescriptor(out);
  return out;
}

json EncodeRequest(const MethodSignature& sig, const std::vector<Value>& args) {
  return json{{"method", sig.name}, {"args", EncodeArgs(args)}};
}

WireRequest DecodeRequest(const json& j) {
  if (!j.is_object() || !j.contains("method") || !j["method"].is_string()) {
    throw ValidationError("request: \"method\" must be a string");
  }
  if (!j.contains("args")) throw ValidationError("request: missing \"args\"");
  return {j["method"].get<std::string>(), DecodeArgs(j["args"])};
}

json EncodeResponse(const ExecutionResult& result) {
  json branches = json::array();
  for (const auto& [e, n] : result.branches) {
    branches.push_back({{"e", e}, {"n", n}});
  }
  return json{{"blocks", result.blocks},
              {"branches", branches},
              {"outcome", std::string(OutcomeName(result.outcome))},
              {"log", result.log}};
}

ExecutionResult DecodeResponse(const json& j) {
  if (!j.is_object()) throw ValidationError("response must be an object");
  ExecutionResult r;
  try {
    if (j.contains("blocks")) {
      for (const auto& b : j.at("blocks")) r.blocks.push_back(b.get<std::string>());
    }
    if (j.contains("branches")) {
      for (const auto& e : j.at("branches")) {
        auto hits = e.at("n").get<int64_t>();
        if (hits < 1) throw ValidationError("branch hit count must be >= 1");
        r.branches[e.at("e").get<std::string>()] += static_cast<uint32_t>(hits);
      }
    }
    r.outcome = ParseOutcome(j.at("outcome").get<std::string>());
    if (j.contains("log")) r.log = j.at("log").get<std::string>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed response: ") + e.what());
  }
  r.Normalize();
  return r;
}

}  // namespace evofuzz
