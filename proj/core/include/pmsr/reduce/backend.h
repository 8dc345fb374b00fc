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
#ifndef PMSR_REDUCE_BACKEND_H_
#define PMSR_REDUCE_BACKEND_H_

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "pmsr/common/bytes.h"
#include "pmsr/common/random.h"
#include "pmsr/proposal/types.h"
#include "pmsr/reduce/paillier.h"
#include "pmsr/reduce/shamir.h"

namespace pmsr::reduce {

// The part of a contribution (or of a folded partial) held by one quorum
// member.
//
//   semi_honest_3pc  party 1..3, `ring` holds Z_(2^64) shares
//   shamir           party = evaluation point x, `ring` holds GF(p) values
//   additive_he      party 0, `ciphertexts` holds Z_(n^2) elements
//   plaintext_dp     party 0, `ring` holds two's-complement values
//
// A decrypted HE aggregate travels as party 0 with two's-complement `ring`.
struct HeldShare {
  uint8_t party = 0;
  std::vector<uint64_t> ring;
  std::vector<mpz_class> ciphertexts;

  size_t size() const {
    return ciphertexts.empty() ? ring.size() : ciphertexts.size();
  }
};

// Share submission wire format:
//
//   computation_id 16B | party_index 1B | field_count 2B | values
//
// Ring and field values are 8 bytes big-endian each. Ciphertexts are a
// u32 byte length followed by the big-endian magnitude.
Bytes EncodeShareWire(const proposal::ComputationId& id,
                      const HeldShare& share);
absl::StatusOr<std::pair<proposal::ComputationId, HeldShare>> DecodeShareWire(
    proposal::ThreatKind kind, std::span<const uint8_t> bytes);

// Splits one contribution (fixed-point values read as signed integers) into
// the payload for each share holder, in quorum order. HE and plaintext
// produce a single payload for the aggregator. `he_key` is required for HE.
absl::StatusOr<std::vector<HeldShare>> ShareContribution(
    const proposal::ThreatModel& model, std::span<const int64_t> values,
    const HEPublicKey* he_key, Rng& rng);

// Local fold at one share holder: sum_c weights[c] * contribution_c in the
// backend's domain (ciphertext products for HE).
absl::StatusOr<HeldShare> FoldShares(const proposal::ThreatModel& model,
                                     std::span<const HeldShare> contributions,
                                     std::span<const int64_t> weights,
                                     const HEPublicKey* he_key);

// Decrypts a folded HE partial into party-0 two's-complement form.
absl::StatusOr<HeldShare> DecryptPartial(const HEKeyPair& key,
                                         const HeldShare& folded);

// Combines the quorum's folded partials into the signed aggregate.
absl::StatusOr<std::vector<int64_t>> ReconstructAggregate(
    const proposal::ThreatModel& model, std::span<const HeldShare> partials);

// Number of quorum members that hold contributor shares (and therefore
// report rosters): all of them except the HE key holder.
size_t ShareHolderCount(const proposal::ThreatModel& model);

}  // namespace pmsr::reduce

#endif  // PMSR_REDUCE_BACKEND_H_
