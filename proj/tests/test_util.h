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

#ifndef EVOFUZZ_TESTS_TEST_UTIL_H_
#define EVOFUZZ_TESTS_TEST_UTIL_H_

#include <filesystem>
#include <string>

#include "evofuzz/rng.h"
#include "evofuzz/service.h"
#include "evofuzz/value.h"

namespace evofuzz::testing_util {

inline std::filesystem::path TestData(const std::string& name) {
  return std::filesystem::path(EVOFUZZ_TESTDATA_DIR) / name;
}

// A fresh, empty directory under the system temp dir.
inline std::filesystem::path TempDir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("evofuzz-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline ValueType RandomType(Rng& rng, int depth) {
  const int choices = depth >= 2 ? 9 : 11;
  switch (rng.Below(choices)) {
    case 0: return ValueType::Boolean();
    case 1: return ValueType::Byte();
    case 2: return ValueType::Char();
    case 3: return ValueType::Short();
    case 4: return ValueType::Integer();
    case 5: return ValueType::Long();
    case 6: return ValueType::Float();
    case 7: return ValueType::Double();
    case 8: return ValueType::String();
    case 9: return ValueType::Array(RandomType(rng, depth + 1));
    default: {
      std::vector<ValueType::Field> fields;
      const int n = 1 + static_cast<int>(rng.Below(3));
      for (int i = 0; i < n; ++i) {
        fields.push_back({"f" + std::to_string(i), RandomType(rng, depth + 1)});
      }
      return ValueType::Object("", std::move(fields));
    }
  }
}

inline MethodSignature RandomSignature(Rng& rng, MethodId id) {
  MethodSignature sig{id, "m" + std::to_string(id), {}};
  const int arity = static_cast<int>(rng.Below(5));
  for (int i = 0; i < arity; ++i) sig.params.push_back(RandomType(rng, 0));
  return sig;
}

}  // namespace evofuzz::testing_util

#endif  // EVOFUZZ_TESTS_TEST_UTIL_H_
