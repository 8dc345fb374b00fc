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
#ifndef PMSR_PROPOSAL_SERIALIZE_H_
#define PMSR_PROPOSAL_SERIALIZE_H_

#include <span>

#include "absl/status/statusor.h"
#include "pmsr/common/bytes.h"
#include "pmsr/proposal/types.h"

namespace pmsr::proposal {

// Fixed-order, fixed-width binary layout used as the signing input.
//
//   "PMSP" | version u8
//   id 16B | deadline u64 | min_participants u32 | budget u64
//   targets: u32 count, u32 each | quorum: u32 count, u32 each
//   map_spec: fn u8, field str, edges (u32 count, f64 each), window u32,
//             item_id u32, bounds flag u8 [lo f64, hi f64]
//   map_post: flag u8 [str]
//   output_schema: u32 count, per field: name str, kind u8, length u32, edges
//   reduce_spec: fn u8, weights (u32 count, f64 each), compatibility u8
//   reduce_post: flag u8 [str]
//   threat_model: kind u8, t u32, n u32
//   proposer: u32 length + bytes
//   epsilon: flag u8 [f64]
//
// Integers are big-endian; strings are u32 length + UTF-8; f64 is the IEEE
// bit pattern written as a big-endian u64.
absl::StatusOr<Bytes> CanonicalSerialize(const ComputationProposal& proposal);

// Inverse of CanonicalSerialize. Rejects trailing bytes and proposals that
// fail validation.
absl::StatusOr<ComputationProposal> DeserializeProposal(
    std::span<const uint8_t> bytes);

}  // namespace pmsr::proposal

#endif  // PMSR_PROPOSAL_SERIALIZE_H_
