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
#ifndef PMSR_MAPPER_MAP_FUNCTIONS_H_
#define PMSR_MAPPER_MAP_FUNCTIONS_H_

#include <vector>

#include "absl/status/statusor.h"
#include "pmsr/common/random.h"
#include "pmsr/mapper/dataset.h"
#include "pmsr/proposal/schema.h"
#include "pmsr/proposal/types.h"

namespace pmsr::mapper {

// Runs a registry function over the dataset. Scalar functions return a
// single element. Pure in (ds, spec).
//
// Field values are clamped to spec.bounds when bounds are declared.
// rolling_mean returns the trailing-window mean ending at the last record
// (the mean of all records when there are fewer than `window`).
// logprob_vector returns the `lp_0, lp_1, ...` columns of the record whose
// `item` field equals item_id.
absl::StatusOr<std::vector<double>> ExecuteMap(
    const LocalDataset& ds, const proposal::MapFnSpec& spec);

// Trailing-window means for every record position, O(n).
std::vector<double> RollingMeanSeries(const std::vector<double>& values,
                                      size_t window);

// Static L1 sensitivity of the registry function for a dataset of
// `records` records. InvalidEpsilon when the function has no finite
// sensitivity (undeclared bounds).
absl::StatusOr<double> Sensitivity(const proposal::MapFnSpec& spec,
                                   size_t records, size_t width);

// value + Laplace(0, sensitivity / epsilon), sampled by inverse CDF.
absl::StatusOr<double> ApplyLaplace(double value, double sensitivity,
                                    double epsilon, Rng& rng);

// Splits flat values across the schema fields in order and encodes them.
// A width mismatch is left for ValidateOutput to report.
absl::StatusOr<proposal::MapOutput> EncodeOutput(
    const proposal::ComputationId& id, const proposal::OutputSchema& schema,
    const std::vector<double>& values);

struct PrivateMapResult {
  // Exact map result before noise or post-processing.
  std::vector<double> raw;
  // After DP noise and map_post.
  std::vector<double> released;
  proposal::MapOutput output;
};

// The node-local part of the private map: execute, add Laplace noise when the
// proposal requests epsilon, apply map_post, encode and validate. Budget
// accounting is the caller's job and must happen before this is called.
absl::StatusOr<PrivateMapResult> RunPrivateMap(
    const LocalDataset& ds, const proposal::ComputationProposal& proposal,
    Rng& noise_rng);

}  // namespace pmsr::mapper

#endif  // PMSR_MAPPER_MAP_FUNCTIONS_H_
