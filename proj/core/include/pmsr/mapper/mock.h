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
#ifndef PMSR_MAPPER_MOCK_H_
#define PMSR_MAPPER_MOCK_H_

#include <cstdint>

#include "absl/status/statusor.h"
#include "pmsr/mapper/dataset.h"

namespace pmsr::mapper {

struct MockMode {
  enum class Kind { kSubsample, kGaussianized };
  Kind kind = Kind::kSubsample;
  // Records to draw for kSubsample; capped at the dataset size.
  size_t k = 0;
  uint64_t seed = 0;

  static MockMode Subsample(size_t k, uint64_t seed) {
    return {Kind::kSubsample, k, seed};
  }
  static MockMode Gaussianized(uint64_t seed) {
    return {Kind::kGaussianized, 0, seed};
  }
};

// Builds the relaxed dataset served by a mock node. Subsampling draws
// records without replacement; gaussianizing replaces every field with
// Normal(field mean, field sd) draws, which drops the real data's tails.
absl::StatusOr<LocalDataset> DeriveMock(const LocalDataset& real_ds,
                                        const MockMode& mode);

}  // namespace pmsr::mapper

#endif  // PMSR_MAPPER_MOCK_H_
