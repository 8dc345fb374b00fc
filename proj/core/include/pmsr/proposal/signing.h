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
#ifndef PMSR_PROPOSAL_SIGNING_H_
#define PMSR_PROPOSAL_SIGNING_H_

#include <array>
#include <cstdint>
#include <span>

#include "absl/status/statusor.h"
#include "pmsr/common/bytes.h"
#include "pmsr/proposal/types.h"

namespace pmsr::proposal {

inline constexpr size_t kPublicKeySize = 32;
inline constexpr size_t kSecretKeySize = 64;
inline constexpr size_t kSignatureSize = 64;
inline constexpr size_t kSeedSize = 32;

// Ed25519 key pair.
struct KeyPair {
  Bytes public_key;
  Bytes secret_key;
};

// Fresh key pair from the system CSPRNG.
KeyPair GenerateKeyPair();

// Deterministic key pair; the same seed always yields the same pair.
KeyPair KeyPairFromSeed(std::span<const uint8_t, kSeedSize> seed);
KeyPair KeyPairFromSeed(uint64_t seed);

struct SignedProposal {
  ComputationProposal proposal;
  Bytes signature;

  friend bool operator==(const SignedProposal&,
                         const SignedProposal&) = default;
};

// Signs the canonical serialization. The proposal's `proposer` must already
// hold the public half of `key`.
absl::StatusOr<SignedProposal> SignProposal(const ComputationProposal& proposal,
                                            const KeyPair& key);

// True iff `signed_proposal.signature` verifies over the canonical bytes
// under `signed_proposal.proposal.proposer`. Never throws or errors.
bool VerifyProposal(const SignedProposal& signed_proposal);

// Detached verification over arbitrary canonical bytes.
bool VerifyBytes(std::span<const uint8_t> message,
                 std::span<const uint8_t> signature,
                 std::span<const uint8_t> public_key);

// Signed binary form: u32 length + canonical bytes, then the 64-byte
// signature.
absl::StatusOr<Bytes> EncodeSigned(const SignedProposal& signed_proposal);
absl::StatusOr<SignedProposal> DecodeSigned(std::span<const uint8_t> bytes);

}  // namespace pmsr::proposal

#endif  // PMSR_PROPOSAL_SIGNING_H_
