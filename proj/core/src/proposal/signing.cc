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
#include "pmsr/proposal/signing.h"

#include <sodium.h>

#include <cstdlib>

#include "pmsr/common/status.h"
#include "pmsr/proposal/serialize.h"

namespace pmsr::proposal {
namespace {

void EnsureSodium() {
  static const bool initialized = [] { return sodium_init() >= 0; }();
  if (!initialized) std::abort();
}

}  // namespace

KeyPair GenerateKeyPair() {
  EnsureSodium();
  KeyPair key{Bytes(kPublicKeySize), Bytes(kSecretKeySize)};
  crypto_sign_keypair(key.public_key.data(), key.secret_key.data());
  return key;
}

KeyPair KeyPairFromSeed(std::span<const uint8_t, kSeedSize> seed) {
  EnsureSodium();
  KeyPair key{Bytes(kPublicKeySize), Bytes(kSecretKeySize)};
  crypto_sign_seed_keypair(key.public_key.data(), key.secret_key.data(),
                           seed.data());
  return key;
}

KeyPair KeyPairFromSeed(uint64_t seed) {
  std::array<uint8_t, kSeedSize> bytes{};
  for (size_t i = 0; i < kSeedSize; i += 8) {
    uint64_t word = MixSeed(seed, i / 8);
    for (size_t j = 0; j < 8; ++j) {
      bytes[i + j] = static_cast<uint8_t>(word >> (8 * j));
    }
  }
  return KeyPairFromSeed(std::span<const uint8_t, kSeedSize>(bytes));
}

absl::StatusOr<SignedProposal> SignProposal(const ComputationProposal& proposal,
                                            const KeyPair& key) {
  EnsureSodium();
  if (key.secret_key.size() != kSecretKeySize ||
      key.public_key.size() != kPublicKeySize) {
    return MakeError(ErrorCode::kInvalidProposal, "malformed key pair");
  }
  if (proposal.proposer != key.public_key) {
    return MakeError(ErrorCode::kInvalidProposal,
                     "proposer: does not match signing key");
  }
  PMSR_ASSIGN_OR_RETURN(Bytes message, CanonicalSerialize(proposal));
  SignedProposal out{proposal, Bytes(kSignatureSize)};
  crypto_sign_detached(out.signature.data(), nullptr, message.data(),
                       message.size(), key.secret_key.data());
  return out;
}

bool VerifyBytes(std::span<const uint8_t> message,
                 std::span<const uint8_t> signature,
                 std::span<const uint8_t> public_key) {
  EnsureSodium();
  if (signature.size() != kSignatureSize ||
      public_key.size() != kPublicKeySize) {
    return false;
  }
  return crypto_sign_verify_detached(signature.data(), message.data(),
                                     message.size(), public_key.data()) == 0;
}

bool VerifyProposal(const SignedProposal& signed_proposal) {
  absl::StatusOr<Bytes> message = CanonicalSerialize(signed_proposal.proposal);
  if (!message.ok()) return false;
  return VerifyBytes(*message, signed_proposal.signature,
                     signed_proposal.proposal.proposer);
}

absl::StatusOr<Bytes> EncodeSigned(const SignedProposal& signed_proposal) {
  PMSR_ASSIGN_OR_RETURN(Bytes canonical,
                        CanonicalSerialize(signed_proposal.proposal));
  ByteWriter w;
  w.Blob(canonical);
  w.Raw(signed_proposal.signature);
  return w.Take();
}

absl::StatusOr<SignedProposal> DecodeSigned(std::span<const uint8_t> bytes) {
  ByteReader r(bytes);
  auto canonical = r.Blob();
  if (!canonical) return MakeError(ErrorCode::kParseError, "truncated body");
  auto signature = r.Raw(kSignatureSize);
  if (!signature || !r.done()) {
    return MakeError(ErrorCode::kParseError, "bad signature block");
  }
  PMSR_ASSIGN_OR_RETURN(ComputationProposal proposal,
                        DeserializeProposal(*canonical));
  return SignedProposal{std::move(proposal), std::move(*signature)};
}

}  // namespace pmsr::proposal
