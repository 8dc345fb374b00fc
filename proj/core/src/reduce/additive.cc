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
#include "pmsr/reduce/additive.h"

#include "pmsr/common/status.h"
#include "pmsr/common/strings.h"

namespace pmsr::reduce {

std::array<AdditiveShare, kAdditiveParties> ShareAdditive(uint64_t raw,
                                                          Rng& rng) {
  const uint64_t first = rng.NextU64();
  const uint64_t second = rng.NextU64();
  return {AdditiveShare{1, first}, AdditiveShare{2, second},
          AdditiveShare{3, raw - first - second}};
}

absl::StatusOr<uint64_t> ReconstructAdditive(
    std::span<const AdditiveShare> shares) {
  std::array<bool, kAdditiveParties + 1> present{};
  uint64_t total = 0;
  for (const AdditiveShare& s : shares) {
    if (s.party_index < 1 || s.party_index > kAdditiveParties) {
      return MakeError(ErrorCode::kMissingParty,
                       StrCat("party index ", int{s.party_index}));
    }
    if (present[s.party_index]) {
      return MakeError(ErrorCode::kDuplicateParty,
                       StrCat("party ", int{s.party_index}));
    }
    present[s.party_index] = true;
    total += s.raw;
  }
  for (int p = 1; p <= kAdditiveParties; ++p) {
    if (!present[p]) {
      return MakeError(ErrorCode::kMissingParty, StrCat("party ", p));
    }
  }
  return total;
}

absl::StatusOr<AdditiveShare> AddSharesAdditive(const AdditiveShare& a,
                                                const AdditiveShare& b) {
  if (a.party_index != b.party_index) {
    return MakeError(ErrorCode::kPartyMismatch,
                     StrCat(int{a.party_index}, " vs ", int{b.party_index}));
  }
  return AdditiveShare{a.party_index, a.raw + b.raw};
}

}  // namespace pmsr::reduce
