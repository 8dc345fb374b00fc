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
#ifndef PMSR_REDUCE_ADDITIVE_H_
#define PMSR_REDUCE_ADDITIVE_H_

#include <array>
#include <cstdint>
#include <span>

#include "absl/status/statusor.h"
#include "pmsr/common/random.h"

namespace pmsr::reduce {

// One of three additive shares over Z_(2^64). Unsigned overflow is the ring
// reduction.
struct AdditiveShare {
  uint8_t party_index = 0;  // 1..3
  uint64_t raw = 0;

  friend bool operator==(const AdditiveShare&, const AdditiveShare&) = default;
};

inline constexpr int kAdditiveParties = 3;

// Shares 1 and 2 are uniform draws; share 3 closes the sum.
std::array<AdditiveShare, kAdditiveParties> ShareAdditive(uint64_t raw,
                                                          Rng& rng);

// Needs exactly one share for each party index 1..3.
absl::StatusOr<uint64_t> ReconstructAdditive(
    std::span<const AdditiveShare> shares);

absl::StatusOr<AdditiveShare> AddSharesAdditive(const AdditiveShare& a,
                                                const AdditiveShare& b);

}  // namespace pmsr::reduce

#endif  // PMSR_REDUCE_ADDITIVE_H_
