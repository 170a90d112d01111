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

#include "evofuzz/service.h"

#include <numeric>
#include <set>

#include "evofuzz/errors.h"

namespace evofuzz {

const MethodSignature* ServiceDescriptor::FindMethod(MethodId id) const {
  for (const auto& m : methods) {
    if (m.id == id) return &m;
  }
  return nullptr;
}

const MethodSignature& ServiceDescriptor::Method(MethodId id) const {
  const MethodSignature* m = FindMethod(id);
  if (m == nullptr) {
    throw ContractViolation("unknown method id " + std::to_string(id));
  }
  return *m;
}

void ValidateDescriptor(const ServiceDescriptor& service) {
  if (service.methods.empty()) {
    throw ValidationError("service '" + service.name + "' has no methods");
  }
  std::set<MethodId> ids;
  for (const auto& m : service.methods) {
    if (!ids.insert(m.id).second) {
      throw ValidationError("duplicate method id " + std::to_string(m.id));
    }
  }
}

bool ValidateIndividual(const Individual& ind, const MethodSignature& sig) {
  if (ind.method != sig.id || ind.inputs.size() != sig.params.size()) {
    return false;
  }
  for (size_t i = 0; i < sig.params.size(); ++i) {
    if (!Conforms(ind.inputs[i], sig.params[i])) return false;
  }
  return true;
}

double Population::MeanFitness() const {
  if (fitness.empty()) return 0;
  return std::accumulate(fitness.begin(), fitness.end(), 0.0) /
         static_cast<double>(fitness.size());
}

int Community::TotalTargetSize() const {
  int total = 0;
  for (const auto& p : populations) total += p.target_size;
  return total;
}

size_t Community::TotalIndividuals() const {
  size_t total = 0;
  for (const auto& p : populations) total += p.individuals.size();
  return total;
}

Population& Community::For(MethodId id) {
  for (auto& p : populations) {
    if (p.method == id) return p;
  }
  throw ContractViolation("no population for method " + std::to_string(id));
}

const Population& Community::For(MethodId id) const {
  return const_cast<Community*>(this)->For(id);
}

}  // namespace evofuzz
