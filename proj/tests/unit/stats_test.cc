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
#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "pmsr/common/random.h"
#include "pmsr/common/status.h"
#include "pmsr/stats/stats.h"

namespace pmsr::stats {
namespace {

TEST(SummarizeTest, OddCount) {
  std::vector<double> v = {1, 2, 3};
  auto s = Summarize(v);
  ASSERT_TRUE(s.ok());
  EXPECT_EQ(s->n, 3u);
  EXPECT_DOUBLE_EQ(s->mean, 2.0);
  EXPECT_DOUBLE_EQ(s->median, 2.0);
}

TEST(SummarizeTest, EvenCountUsesLowerMiddle) {
  std::vector<double> v = {1, 2, 3, 4};
  EXPECT_DOUBLE_EQ(Summarize(v)->median, 2.0);
}

TEST(SummarizeTest, Empty) {
  std::vector<double> v;
  EXPECT_TRUE(HasErrorCode(Summarize(v).status(), ErrorCode::kEmpty));
}

TEST(SummarizeTest, MatchesSortOracleAndIsOrderIndependent) {
  Rng rng(1);
  for (int t = 0; t < 500; ++t) {
    std::vector<double> v(1 + rng.Below(50));
    for (double& x : v) x = rng.Normal(10, 5);
    std::vector<double> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    const size_t n = v.size();
    double sum = 0;
    for (double x : v) sum += x;
    const size_t rank = static_cast<size_t>(std::ceil(0.95 * n));
    auto s = Summarize(v);
    ASSERT_TRUE(s.ok());
    EXPECT_NEAR(s->mean, sum / n, 1e-9);
    EXPECT_EQ(s->median, sorted[(n - 1) / 2]);
    EXPECT_EQ(s->p95, sorted[rank - 1]);
    EXPECT_EQ(s->min, sorted.front());
    EXPECT_EQ(s->max, sorted.back());
    EXPECT_LE(s->min, s->median);
    EXPECT_LE(s->median, s->max);
    auto t2 = Summarize(sorted);
    EXPECT_EQ(t2->median, s->median);
    EXPECT_EQ(t2->p95, s->p95);
    EXPECT_NEAR(t2->mean, s->mean, 1e-9);
  }
}

using Counts = std::map<std::string, double>;

TEST(RepresentationRatioTest, Proportional) {
  const Counts baseline = {{"a", 0.5}, {"b", 0.3}, {"c", 0.2}};
  const Counts observed = {{"a", 50}, {"b", 30}, {"c", 20}};
  auto r = RepresentationRatio(observed, baseline);
  ASSERT_TRUE(r.ok());
  for (const auto& [k, v] : *r) EXPECT_NEAR(v, 1.0, 1e-12) << k;
}

TEST(RepresentationRatioTest, ThreeTimesBaseline) {
  const Counts baseline = {{"tech", 0.1}, {"rest", 0.9}};
  const Counts observed = {{"tech", 30}, {"rest", 70}};
  EXPECT_NEAR(RepresentationRatio(observed, baseline)->at("tech"), 3.0, 1e-12);
}

TEST(RepresentationRatioTest, Errors) {
  const Counts baseline = {{"a", 0.5}, {"b", 0.5}};
  EXPECT_TRUE(HasErrorCode(
      RepresentationRatio({{"a", 1}, {"c", 1}}, baseline).status(),
      ErrorCode::kCategoryMismatch));
  EXPECT_TRUE(HasErrorCode(
      RepresentationRatio({{"a", 1}, {"b", 1}}, {{"a", 1.0}, {"b", 0.0}})
          .status(),
      ErrorCode::kZeroBaseline));
  EXPECT_TRUE(HasErrorCode(
      RepresentationRatio({{"a", 1}, {"b", 1}}, {{"a", 0.6}, {"b", 0.6}})
          .status(),
      ErrorCode::kOutOfRange));
  EXPECT_TRUE(HasErrorCode(
      RepresentationRatio({{"a", 0}, {"b", 0}}, baseline).status(),
      ErrorCode::kZeroTotal));
}

TEST(RepresentationRatioTest, RandomInstancesAndScaleInvariance) {
  Rng rng(2);
  for (int t = 0; t < 200; ++t) {
    const size_t k = 2 + rng.Below(10);
    Counts baseline;
    Counts observed;
    std::vector<double> w(k);
    double wsum = 0;
    for (double& x : w) wsum += (x = 0.1 + rng.Uniform01());
    double total = 0;
    for (size_t i = 0; i < k; ++i) {
      const std::string name = "c" + std::to_string(i);
      baseline[name] = w[i] / wsum;
      total += (observed[name] = static_cast<double>(rng.Below(1000) + 1));
    }
    auto r = RepresentationRatio(observed, baseline);
    ASSERT_TRUE(r.ok()) << r.status();
    Counts scaled = observed;
    for (auto& [name, v] : scaled) v *= 7.5;
    auto r2 = RepresentationRatio(scaled, baseline);
    for (const auto& [name, v] : observed) {
      EXPECT_NEAR(r->at(name), (v / total) / baseline[name], 1e-9);
      EXPECT_NEAR(r2->at(name), r->at(name), 1e-9);
    }
  }
}

}  // namespace
}  // namespace pmsr::stats
