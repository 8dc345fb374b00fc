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
#include "pmsr/stats/stats.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "pmsr/common/status.h"
#include "pmsr/common/strings.h"

namespace pmsr::stats {

absl::StatusOr<SummaryStats> Summarize(std::span<const double> values) {
  if (values.empty()) return MakeError(ErrorCode::kEmpty, "no values");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const size_t n = sorted.size();
  SummaryStats s;
  s.n = n;
  double total = 0;
  for (double v : sorted) total += v;
  s.mean = total / static_cast<double>(n);
  s.median = sorted[(n - 1) / 2];
  size_t rank = static_cast<size_t>(std::ceil(0.95 * static_cast<double>(n)));
  s.p95 = sorted[std::max<size_t>(rank, 1) - 1];
  s.min = sorted.front();
  s.max = sorted.back();
  return s;
}

absl::StatusOr<std::map<std::string, double>> RepresentationRatio(
    const std::map<std::string, double>& observed,
    const std::map<std::string, double>& baseline) {
  if (observed.size() != baseline.size()) {
    return MakeError(ErrorCode::kCategoryMismatch,
                     StrCat(observed.size(), " observed vs ", baseline.size(),
                            " baseline categories"));
  }
  double baseline_total = 0;
  double observed_total = 0;
  for (const auto& [name, share] : baseline) {
    auto it = observed.find(name);
    if (it == observed.end()) {
      return MakeError(ErrorCode::kCategoryMismatch, name);
    }
    if (!(share > 0)) return MakeError(ErrorCode::kZeroBaseline, name);
    baseline_total += share;
    observed_total += it->second;
  }
  if (std::abs(baseline_total - 1.0) > 1e-9) {
    return MakeError(ErrorCode::kOutOfRange,
                     StrCat("baseline sums to ", baseline_total));
  }
  if (!(observed_total > 0)) return MakeError(ErrorCode::kZeroTotal);
  std::map<std::string, double> out;
  for (const auto& [name, share] : baseline) {
    out[name] = (observed.at(name) / observed_total) / share;
  }
  return out;
}

}  // namespace pmsr::stats
