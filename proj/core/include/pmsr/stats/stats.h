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
#ifndef PMSR_STATS_STATS_H_
#define PMSR_STATS_STATS_H_

#include <cstddef>
#include <map>
#include <span>
#include <string>

#include "absl/status/statusor.h"

namespace pmsr::stats {

struct SummaryStats {
  size_t n = 0;
  double mean = 0;
  // Lower of the two middle values when n is even.
  double median = 0;
  // Nearest-rank percentile: the ceil(0.95 n)-th smallest value.
  double p95 = 0;
  double min = 0;
  double max = 0;

  friend bool operator==(const SummaryStats&, const SummaryStats&) = default;
};

// Empty if `values` is empty.
absl::StatusOr<SummaryStats> Summarize(std::span<const double> values);

// ratio_c = (observed_c / sum(observed)) / baseline_c for every category.
// Both maps must have the same keys (CategoryMismatch), every baseline entry
// must be positive (ZeroBaseline), baseline proportions must sum to one
// within 1e-9 (OutOfRange) and the observed total must be positive
// (ZeroTotal).
absl::StatusOr<std::map<std::string, double>> RepresentationRatio(
    const std::map<std::string, double>& observed,
    const std::map<std::string, double>& baseline);

}  // namespace pmsr::stats

#endif  // PMSR_STATS_STATS_H_
