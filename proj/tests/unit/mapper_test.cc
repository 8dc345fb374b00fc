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
#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "pmsr/common/status.h"
#include "pmsr/mapper/dataset.h"
#include "pmsr/mapper/fixed_point.h"
#include "pmsr/mapper/map_functions.h"
#include "pmsr/mapper/mock.h"
#include "test_util.h"

namespace pmsr::mapper {
namespace {

using proposal::MapFn;
using proposal::MapFnSpec;

LocalDataset Scores(std::vector<double> values) {
  std::vector<std::vector<double>> rows;
  for (double v : values) rows.push_back({v});
  return *LocalDataset::Create({"score"}, std::move(rows), Provenance::kReal);
}

MapFnSpec Spec(MapFn fn, std::string field = "score") {
  MapFnSpec s;
  s.fn = fn;
  s.field = std::move(field);
  return s;
}

TEST(ExecuteMapTest, TwoPointMean) {
  auto out = ExecuteMap(Scores({80, 90}), Spec(MapFn::kMeanOf));
  ASSERT_TRUE(out.ok());
  EXPECT_EQ(*out, std::vector<double>{85.0});
}

TEST(ExecuteMapTest, CountOverThousandRecords) {
  auto out = ExecuteMap(Scores(std::vector<double>(1000, 1.0)),
                        Spec(MapFn::kCount, ""));
  ASSERT_TRUE(out.ok());
  EXPECT_EQ(*out, std::vector<double>{1000.0});
}

TEST(ExecuteMapTest, RollingMeanMatchesBruteForce) {
  Rng rng(4);
  std::vector<double> year;
  for (int d = 0; d < 400; ++d) year.push_back(50 + rng.Below(51));
  MapFnSpec spec = Spec(MapFn::kRollingMean);
  spec.window = 365;
  auto out = ExecuteMap(Scores(year), spec);
  ASSERT_TRUE(out.ok());
  double sum = 0;
  for (size_t i = year.size() - 365; i < year.size(); ++i) sum += year[i];
  EXPECT_NEAR(out->front(), sum / 365.0, 1e-12);

  const std::vector<double> series = RollingMeanSeries(year, 365);
  ASSERT_EQ(series.size(), year.size());
  for (size_t end = 0; end < year.size(); ++end) {
    const size_t start = end + 1 >= 365 ? end + 1 - 365 : 0;
    double s = 0;
    for (size_t i = start; i <= end; ++i) s += year[i];
    EXPECT_NEAR(series[end], s / static_cast<double>(end + 1 - start), 1e-9);
  }
}

TEST(ExecuteMapTest, Errors) {
  EXPECT_TRUE(HasErrorCode(ExecuteMap(Scores({1}), Spec(MapFn::kMeanOf, "x"))
                               .status(),
                           ErrorCode::kMissingField));
  EXPECT_TRUE(HasErrorCode(
      ExecuteMap(Scores({}), Spec(MapFn::kMeanOf)).status(),
      ErrorCode::kEmptyDataset));
}

TEST(ExecuteMapTest, HistogramAndBounds) {
  MapFnSpec h = Spec(MapFn::kHistogramOf);
  h.bin_edges = {0, 10, 20, 30};
  auto out = ExecuteMap(Scores({1, 5, 15, 29, 30, 45}), h);
  ASSERT_TRUE(out.ok());
  EXPECT_EQ(out->size(), 3u);
  MapFnSpec m = Spec(MapFn::kSumOf);
  m.bounds = std::make_pair(0.0, 10.0);
  EXPECT_EQ(*ExecuteMap(Scores({-5, 3, 50}), m), std::vector<double>{13.0});
}

TEST(LaplaceTest, VanishingNoise) {
  Rng rng(1);
  for (double v : {0.0, 3.5, -1e6}) {
    auto out = ApplyLaplace(v, 1.0, 1e9, rng);
    ASSERT_TRUE(out.ok());
    EXPECT_NEAR(*out, v, 1e-6);
  }
}

TEST(LaplaceTest, DeterministicForSeed) {
  Rng a(123);
  Rng b(123);
  EXPECT_EQ(*ApplyLaplace(5.0, 1.0, 0.5, a), *ApplyLaplace(5.0, 1.0, 0.5, b));
}

TEST(LaplaceTest, InvalidEpsilon) {
  Rng rng(1);
  for (double eps : {0.0, -1.0, std::nan(""), HUGE_VAL}) {
    EXPECT_TRUE(HasErrorCode(ApplyLaplace(0, 1, eps, rng).status(),
                             ErrorCode::kInvalidEpsilon));
  }
}

TEST(LaplaceTest, StandardDeviationWithinFivePercent) {
  Rng rng(2024);
  constexpr int kSamples = 100000;
  const double b = 1.0 / 0.5;
  double sum = 0;
  double sum_sq = 0;
  for (int i = 0; i < kSamples; ++i) {
    const double x = *ApplyLaplace(0.0, 1.0, 0.5, rng);
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / kSamples;
  const double sd = std::sqrt((sum_sq - kSamples * mean * mean) / (kSamples - 1));
  EXPECT_NEAR(sd, b * std::sqrt(2.0), 0.05 * b * std::sqrt(2.0));
}

TEST(FixedPointTest, Examples) {
  EXPECT_EQ(EncodeFixed(0.0)->raw, 0u);
  EXPECT_EQ(EncodeFixed(1.0)->raw, 65536u);
  EXPECT_EQ(EncodeFixed(-2.5)->raw, ~uint64_t{0} - 163840 + 1);
  EXPECT_TRUE(HasErrorCode(EncodeFixed(1e300).status(), ErrorCode::kOutOfRange));
  EXPECT_TRUE(
      HasErrorCode(EncodeFixed(std::nan("")).status(), ErrorCode::kOutOfRange));
}

TEST(FixedPointTest, RoundTripOnGrid) {
  Rng rng(6);
  for (int i = 0; i < 10000; ++i) {
    const int64_t k = static_cast<int64_t>(rng.NextU64() >> 20) -
                      (int64_t{1} << 43);
    const double v = static_cast<double>(k) / kScale;
    auto fp = EncodeFixed(v);
    ASSERT_TRUE(fp.ok());
    EXPECT_EQ(fp->as_signed(), k);
    EXPECT_EQ(DecodeFixed(*fp), v);
  }
}

TEST(MockTest, FullSubsampleIsPermutation) {
  Rng rng(3);
  std::vector<double> values;
  for (int i = 0; i < 50; ++i) values.push_back(rng.Uniform01());
  const LocalDataset real = Scores(values);
  auto mock = DeriveMock(real, MockMode::Subsample(50, 9));
  ASSERT_TRUE(mock.ok());
  EXPECT_EQ(mock->provenance(), Provenance::kMock);
  std::multiset<double> a(values.begin(), values.end());
  auto col = *mock->Column("score");
  std::multiset<double> b(col.begin(), col.end());
  EXPECT_EQ(a, b);
}

TEST(MockTest, SubsampleDeterministic) {
  std::vector<double> values(100);
  for (int i = 0; i < 100; ++i) values[i] = i;
  const LocalDataset real = Scores(values);
  auto a = DeriveMock(real, MockMode::Subsample(10, 5));
  auto b = DeriveMock(real, MockMode::Subsample(10, 5));
  ASSERT_TRUE(a.ok());
  EXPECT_EQ(a->rows(), b->rows());
  EXPECT_EQ(a->size(), 10u);
}

TEST(MockTest, EmptyDataset) {
  EXPECT_TRUE(HasErrorCode(
      DeriveMock(Scores({}), MockMode::Gaussianized(1)).status(),
      ErrorCode::kEmptyDataset));
}

double ExcessKurtosis(const std::vector<double>& v) {
  double mean = 0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double m2 = 0;
  double m4 = 0;
  for (double x : v) {
    const double d = x - mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  m2 /= static_cast<double>(v.size());
  m4 /= static_cast<double>(v.size());
  return m4 / (m2 * m2) - 3.0;
}

TEST(MockTest, GaussianizedReducesKurtosisOfParetoField) {
  Rng rng(10);
  std::vector<double> pareto;
  for (int i = 0; i < 5000; ++i) {
    pareto.push_back(std::pow(rng.UniformOpen01(), -1.0 / 2.5));
  }
  const LocalDataset real = Scores(pareto);
  auto mock = DeriveMock(real, MockMode::Gaussianized(4));
  ASSERT_TRUE(mock.ok());
  EXPECT_LT(ExcessKurtosis(*mock->Column("score")), ExcessKurtosis(pareto));
}

TEST(RunPrivateMapTest, PipelineOrder) {
  const proposal::KeyPair key = proposal::KeyPairFromSeed(2);
  proposal::ComputationProposal p = pmsr::testing::SampleProposal(key);
  p.map_post = "clamp(0,50)";
  Rng rng(1);
  auto r = RunPrivateMap(Scores({80, 90}), p, rng);
  ASSERT_TRUE(r.ok()) << r.status();
  EXPECT_EQ(r->raw, std::vector<double>{85.0});
  EXPECT_EQ(r->released, std::vector<double>{50.0});
  EXPECT_EQ(r->output.Flatten().front().raw, 50u * 65536u);

  p.map_post.reset();
  p.epsilon = 1.0;
  auto noised = RunPrivateMap(Scores({80, 90}), p, rng);
  ASSERT_TRUE(noised.ok());
  EXPECT_NE(noised->released.front(), 85.0);
}

TEST(CsvTest, ParseWithIndexColumn) {
  auto ds = ParseCsv("id,score,hours\n0,80,7\n1,90,8\n", Provenance::kReal);
  ASSERT_TRUE(ds.ok()) << ds.status();
  EXPECT_EQ(ds->size(), 2u);
  EXPECT_EQ(*ds->Column("score"), (std::vector<double>{80, 90}));
  EXPECT_FALSE(ParseCsv("a,b\n1\n", Provenance::kReal).ok());
}

}  // namespace
}  // namespace pmsr::mapper
