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

#ifndef EVOFUZZ_SERVICE_H_
#define EVOFUZZ_SERVICE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "evofuzz/value.h"

namespace evofuzz {

using MethodId = uint32_t;
using TestId = uint64_t;

struct MethodSignature {
  MethodId id = 0;
  std::string name;
  std::vector<ValueType> params;

  friend bool operator==(const MethodSignature&,
                         const MethodSignature&) = default;
};

// The public interface of a service under test. Method names may repeat
// (overloads); method ids may not.
struct ServiceDescriptor {
  std::string name;
  std::vector<MethodSignature> methods;

  // Throws ContractViolation if the id is unknown.
  const MethodSignature& Method(MethodId id) const;
  const MethodSignature* FindMethod(MethodId id) const;

  friend bool operator==(const ServiceDescriptor&,
                         const ServiceDescriptor&) = default;
};

// Throws ValidationError unless the descriptor has at least one method and
// unique method ids.
void ValidateDescriptor(const ServiceDescriptor& service);

// One candidate test: a method plus an input vector for it.
struct Individual {
  TestId id = 0;
  MethodId method = 0;
  std::vector<Value> inputs;

  bool SameContent(const Individual& other) const {
    return method == other.method && inputs == other.inputs;
  }
};

// True iff arity and every input type match the signature.
bool ValidateIndividual(const Individual& ind, const MethodSignature& sig);

// Monotonic source of test ids, owned by one campaign.
class IdSource {
 public:
  explicit IdSource(TestId first = 1) : next_(first) {}
  TestId Next() { return next_++; }
  TestId peek() const { return next_; }

 private:
  TestId next_;
};

inline constexpr int kMinTargetSize = 2;

// All individuals targeting one method. `fitness` parallels `individuals`
// once the generation has been evaluated.
struct Population {
  MethodId method = 0;
  std::vector<Individual> individuals;
  std::vector<double> fitness;
  std::vector<Individual> offspring;
  int target_size = kMinTargetSize;

  double MeanFitness() const;
};

// One population per service method, in descriptor order.
struct Community {
  ServiceDescriptor service;
  std::vector<Population> populations;

  int TotalTargetSize() const;
  size_t TotalIndividuals() const;
  Population& For(MethodId id);
  const Population& For(MethodId id) const;
};

}  // namespace evofuzz

#endif  // EVOFUZZ_SERVICE_H_
