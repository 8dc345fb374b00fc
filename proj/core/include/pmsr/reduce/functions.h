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
#ifndef PMSR_REDUCE_FUNCTIONS_H_
#define PMSR_REDUCE_FUNCTIONS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "pmsr/proposal/types.h"

namespace pmsr::reduce {

// G = sum_i sum_j |x_i - x_j| / (2 n^2 mean), computed in O(n log n) from
// the sorted values. Values must be non-negative.
absl::StatusOr<double> Gini(std::span<const double> values);

// Share of the total held by the largest ceil(0.1 n) values.
absl::StatusOr<double> TopDecileShare(std::span<const double> values);

// Weighted log-probability ensembling: argmax_c sum_m w_m logprob[m][c] with
// weights normalised to sum 1. Ties go to the lowest choice index.
absl::StatusOr<size_t> GacEnsemble(
    const std::vector<std::vector<double>>& logprobs,
    std::span<const double> weights);

// Fraction of rows (questions) with at least one true entry (model).
absl::StatusOr<double> TheoreticalMax(
    const std::vector<std::vector<bool>>& correct);

// Integer weights used when ensembling inside the share domain, quantized to
// six decimal digits.
inline constexpr int64_t kGacWeightScale = 1'000'000;
absl::StatusOr<int64_t> QuantizeWeight(double weight);

// A reconstructed aggregate: sum_c k_c * x_c over contributors, where x_c is
// the fixed-point contribution and k_c the integer fold weight (1 except for
// gac_ensemble).
struct Aggregate {
  std::vector<int64_t> scaled;
  // Value of one unit of `scaled` relative to the plaintext: 2^16 times the
  // weight scale.
  double scale = 65536.0;
  uint32_t participants = 0;
};

// Runs the registry function named by `spec` on a reconstructed aggregate,
// then the optional reduce_post step. Comparison-based functions only ever
// see this aggregate, never individual contributions.
absl::StatusOr<std::vector<double>> ApplyReduceFunction(
    const proposal::ReduceFnSpec& spec,
    const std::optional<std::string>& reduce_post, const Aggregate& aggregate);

}  // namespace pmsr::reduce

#endif  // PMSR_REDUCE_FUNCTIONS_H_
