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

#ifndef EVOFUZZ_RNG_H_
#define EVOFUZZ_RNG_H_

#include <cstdint>
#include <random>

namespace evofuzz {

// Deterministic generator for one campaign. Built on mt19937_64, whose
// output sequence is fixed by the standard; the bounded draws below are
// implemented here rather than through <random> distributions so that
// transcripts do not depend on the standard library vendor.
class Rng {
 public:
  explicit Rng(uint64_t seed, uint64_t stream = 0)
      : engine_(Mix(seed, stream)) {}

  uint64_t Next() { return engine_(); }

  // Uniform in [0, n). n must be positive.
  uint64_t Below(uint64_t n) {
    // Rejection sampling over the largest multiple of n.
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  // Uniform in [lo, hi], both inclusive.
  int64_t Range(int64_t lo, int64_t hi) {
    const uint64_t span = static_cast<uint64_t>(hi) - static_cast<uint64_t>(lo);
    if (span == UINT64_MAX) return static_cast<int64_t>(engine_());
    return static_cast<int64_t>(static_cast<uint64_t>(lo) + Below(span + 1));
  }

  // Uniform in [0, 1) with 53 bits of resolution.
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  bool Bernoulli(double p) { return Uniform() < p; }

  bool Coin() { return (engine_() >> 63) != 0; }

  // Independent generator for a derived stream.
  Rng Fork(uint64_t stream) { return Rng(engine_(), stream); }

 private:
  static uint64_t Mix(uint64_t seed, uint64_t stream) {
    // splitmix64 finalizer over the (seed, stream) pair.
    uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace evofuzz

#endif  // EVOFUZZ_RNG_H_
