/*
 * Copyright 2026 The PMSR Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef PMSR_COMMON_RANDOM_H_
#define PMSR_COMMON_RANDOM_H_

#include <cstdint>
#include <random>

namespace pmsr {

// Seeded generator with platform-independent derived draws. The standard
// distributions are implementation-defined, so every draw used by the
// simulator goes through the helpers below instead.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t NextU64() { return engine_(); }

  // Uniform in [0, bound). `bound` must be non-zero.
  uint64_t Below(uint64_t bound);

  // Uniform in [lo, hi], inclusive.
  uint64_t Between(uint64_t lo, uint64_t hi);

  // Uniform in [0, 1) with 53 bits of precision.
  double Uniform01();

  // Uniform in the open interval (0, 1).
  double UniformOpen01();

  bool Bernoulli(double p) { return Uniform01() < p; }

  // Standard normal via Box-Muller.
  double Normal(double mean = 0.0, double stddev = 1.0);

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; derives independent stream seeds from a master seed.
uint64_t MixSeed(uint64_t seed, uint64_t stream);

}  // namespace pmsr

#endif  // PMSR_COMMON_RANDOM_H_
