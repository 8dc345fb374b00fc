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
#include <benchmark/benchmark.h>

#include <vector>

#include "pmsr/common/random.h"
#include "pmsr/reduce/additive.h"
#include "pmsr/reduce/functions.h"
#include "pmsr/reduce/paillier.h"
#include "pmsr/reduce/shamir.h"

namespace pmsr::reduce {
namespace {

void BM_AdditiveShareReconstruct(benchmark::State& state) {
  Rng rng(1);
  uint64_t v = 0;
  for (auto _ : state) {
    auto shares = ShareAdditive(++v, rng);
    benchmark::DoNotOptimize(ReconstructAdditive(shares));
  }
}
BENCHMARK(BM_AdditiveShareReconstruct);

void BM_ShamirShareReconstruct(benchmark::State& state) {
  const auto n = static_cast<uint32_t>(state.range(0));
  const uint32_t t = n / 2 + 1;
  Rng rng(2);
  uint64_t v = 0;
  for (auto _ : state) {
    auto shares = *ShareShamir(++v, t, n, rng);
    shares.resize(t);
    benchmark::DoNotOptimize(ReconstructShamir(shares, t));
  }
}
BENCHMARK(BM_ShamirShareReconstruct)->Arg(3)->Arg(7)->Arg(31);

class PaillierFixture : public benchmark::Fixture {
 public:
  void SetUp(const benchmark::State& state) override {
    Rng rng(3);
    key = *HeKeygen(static_cast<int>(state.range(0)), rng);
  }
  HEKeyPair key;
};

BENCHMARK_DEFINE_F(PaillierFixture, Encrypt)(benchmark::State& state) {
  Rng rng(4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(HeEncrypt(key.pub, 123456789, rng));
  }
}
BENCHMARK_REGISTER_F(PaillierFixture, Encrypt)->Arg(512)->Arg(1024)->Arg(2048);

BENCHMARK_DEFINE_F(PaillierFixture, Decrypt)(benchmark::State& state) {
  Rng rng(5);
  const HECiphertext ct = *HeEncrypt(key.pub, 987654321, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(HeDecrypt(key, ct));
  }
}
BENCHMARK_REGISTER_F(PaillierFixture, Decrypt)->Arg(512)->Arg(1024)->Arg(2048);

BENCHMARK_DEFINE_F(PaillierFixture, Add)(benchmark::State& state) {
  Rng rng(6);
  const HECiphertext a = *HeEncrypt(key.pub, 1, rng);
  const HECiphertext b = *HeEncrypt(key.pub, 2, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(HeAdd(key.pub, a, b));
  }
}
BENCHMARK_REGISTER_F(PaillierFixture, Add)->Arg(1024);

void BM_Gini(benchmark::State& state) {
  Rng rng(7);
  std::vector<double> x(static_cast<size_t>(state.range(0)));
  for (double& v : x) v = rng.Uniform01();
  for (auto _ : state) {
    benchmark::DoNotOptimize(Gini(x));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Gini)->RangeMultiplier(10)->Range(100, 1000000)->Complexity();

}  // namespace
}  // namespace pmsr::reduce
