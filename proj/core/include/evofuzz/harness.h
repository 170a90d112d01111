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

#ifndef EVOFUZZ_HARNESS_H_
#define EVOFUZZ_HARNESS_H_

#include <vector>

#include "evofuzz/coverage.h"
#include "evofuzz/service.h"
#include "evofuzz/value.h"

namespace evofuzz {

// One invocation of a service method.
struct Call {
  MethodId method = 0;
  std::vector<Value> inputs;

  static Call Of(const Individual& ind) { return {ind.method, ind.inputs}; }
};

// Something that can run calls against a service and report coverage.
// Instances are owned by a single campaign.
class Harness {
 public:
  virtual ~Harness() = default;

  virtual const ServiceDescriptor& descriptor() const = 0;

  // Runs one call. With `collect_coverage` false only the outcome and log
  // are reported. Failures of the harness itself are reported as kCrash.
  virtual ExecutionResult Execute(const Call& call, bool collect_coverage) = 0;
};

}  // namespace evofuzz

#endif  // EVOFUZZ_HARNESS_H_
