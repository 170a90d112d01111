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

#ifndef EVOFUZZ_CODEC_H_
#define EVOFUZZ_CODEC_H_

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "evofuzz/coverage.h"
#include "evofuzz/service.h"
#include "evofuzz/value.h"

namespace evofuzz {

// Canonical JSON encoding of values, shared by the wire protocol and the
// campaign record files:
//   bool -> true/false; i8..i64 -> integer; char -> one-character string;
//   f32/f64 -> number when finite, otherwise the raw bits as "0x..." hex;
//   string -> string; array -> array; object -> {field: value};
//   null marker -> null.
nlohmann::json EncodeValue(const Value& v);
// Throws ValidationError if `j` is not a valid encoding of `type`.
Value DecodeValue(const nlohmann::json& j, const ValueType& type);

// {"t": type-expr, "v": encoded value}.
nlohmann::json EncodeArg(const Value& v);
Value DecodeArg(const nlohmann::json& j);

nlohmann::json EncodeArgs(const std::vector<Value>& values);
std::vector<Value> DecodeArgs(const nlohmann::json& j);

// {"name": ..., "methods": [{"id", "name", "params": [type-expr]}]}.
nlohmann::json EncodeDescriptor(const ServiceDescriptor& service);
ServiceDescriptor DecodeDescriptor(const nlohmann::json& j);

// Wire protocol request: {"method": name, "args": [...]}.
struct WireRequest {
  std::string method;
  std::vector<Value> args;
};
nlohmann::json EncodeRequest(const MethodSignature& sig,
                             const std::vector<Value>& args);
WireRequest DecodeRequest(const nlohmann::json& j);

// Wire protocol response: {"blocks": [...], "branches": [{"e", "n"}],
// "outcome": "ok"|"exception"|"crash", "log": text}.
nlohmann::json EncodeResponse(const ExecutionResult& result);
ExecutionResult DecodeResponse(const nlohmann::json& j);

}  // namespace evofuzz

#endif  // EVOFUZZ_CODEC_H_
