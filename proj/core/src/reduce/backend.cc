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
#include "pmsr/reduce/backend.h"

#include <algorithm>

#include "pmsr/common/status.h"
#include "pmsr/common/strings.h"
#include "pmsr/reduce/additive.h"

namespace pmsr::reduce {
namespace {

using proposal::ThreatKind;
using proposal::ThreatModel;

absl::Status NotImplementedTee() {
  return MakeError(ErrorCode::kNotImplemented, "TEE backend");
}

absl::Status CheckWidths(std::span<const HeldShare> shares) {
  for (const HeldShare& s : shares) {
    if (s.size() != shares.front().size()) {
      return MakeError(ErrorCode::kDimensionMismatch,
                       StrCat("share widths ", s.size(), " vs ",
                              shares.front().size()));
    }
  }
  return absl::OkStatus();
}

}  // namespace

Bytes EncodeShareWire(const proposal::ComputationId& id,
                      const HeldShare& share) {
  ByteWriter w;
  w.Raw(id.bytes);
  w.U8(share.party);
  w.U16(static_cast<uint16_t>(share.size()));
  if (!share.ciphertexts.empty()) {
    for (const mpz_class& c : share.ciphertexts) w.Blob(MpzToBytes(c));
  } else {
    for (uint64_t v : share.ring) w.U64(v);
  }
  return w.Take();
}

absl::StatusOr<std::pair<proposal::ComputationId, HeldShare>> DecodeShareWire(
    ThreatKind kind, std::span<const uint8_t> bytes) {
  ByteReader r(bytes);
  auto id_bytes = r.Raw(16);
  auto party = r.U8();
  auto count = r.U16();
  if (!id_bytes || !party || !count) {
    return MakeError(ErrorCode::kMalformedWire, "truncated header");
  }
  proposal::ComputationId id;
  std::copy(id_bytes->begin(), id_bytes->end(), id.bytes.begin());
  HeldShare share;
  share.party = *party;
  for (uint16_t i = 0; i < *count; ++i) {
    if (kind == ThreatKind::kAdditiveHE) {
      auto blob = r.Blob();
      if (!blob) return MakeError(ErrorCode::kMalformedWire, "ciphertext");
      share.ciphertexts.push_back(MpzFromBytes(*blob));
    } else {
      auto v = r.U64();
      if (!v) return MakeError(ErrorCode::kMalformedWire, "value");
      share.ring.push_back(*v);
    }
  }
  if (!r.done()) return MakeError(ErrorCode::kMalformedWire, "trailing bytes");
  return std::make_pair(id, std::move(share));
}

absl::StatusOr<std::vector<HeldShare>> ShareContribution(
    const ThreatModel& model, std::span<const int64_t> values,
    const HEPublicKey* he_key, Rng& rng) {
  switch (model.kind) {
    case ThreatKind::kSemiHonest3PC: {
      std::vector<HeldShare> out(kAdditiveParties);
      for (int p = 0; p < kAdditiveParties; ++p) {
        out[p].party = static_cast<uint8_t>(p + 1);
      }
      for (int64_t v : values) {
        auto shares = ShareAdditive(static_cast<uint64_t>(v), rng);
        for (int p = 0; p < kAdditiveParties; ++p) {
          out[p].ring.push_back(shares[p].raw);
        }
      }
      return out;
    }
    case ThreatKind::kShamirThreshold: {
      const PrimeField field;
      std::vector<HeldShare> out(model.parties);
      for (uint32_t p = 0; p < model.parties; ++p) {
        out[p].party = static_cast<uint8_t>(p + 1);
      }
      for (int64_t v : values) {
        PMSR_ASSIGN_OR_RETURN(
            std::vector<ShamirShare> shares,
            ShareShamir(field.FromSigned(v), model.threshold, model.parties,
                        rng, field));
        for (uint32_t p = 0; p < model.parties; ++p) {
          out[p].ring.push_back(shares[p].y);
        }
      }
      return out;
    }
    case ThreatKind::kAdditiveHE: {
      if (he_key == nullptr) {
        return MakeError(ErrorCode::kConfigInvalid, "missing HE public key");
      }
      HeldShare share;
      for (int64_t v : values) {
        PMSR_ASSIGN_OR_RETURN(HECiphertext ct,
                              HeEncrypt(*he_key, HeFromSigned(*he_key, v), rng));
        share.ciphertexts.push_back(std::move(ct.c));
      }
      return std::vector<HeldShare>{std::move(share)};
    }
    case ThreatKind::kPlaintextDP: {
      HeldShare share;
      for (int64_t v : values) share.ring.push_back(static_cast<uint64_t>(v));
      return std::vector<HeldShare>{std::move(share)};
    }
    case ThreatKind::kTEEStub:
      return NotImplementedTee();
  }
  return NotImplementedTee();
}

absl::StatusOr<HeldShare> FoldShares(const ThreatModel& model,
                                     std::span<const HeldShare> contributions,
                                     std::span<const int64_t> weights,
                                     const HEPublicKey* he_key) {
  if (model.kind == ThreatKind::kTEEStub) return NotImplementedTee();
  if (contributions.empty()) {
    return MakeError(ErrorCode::kEmpty, "nothing to fold");
  }
  if (weights.size() != contributions.size()) {
    return MakeError(ErrorCode::kDimensionMismatch, "one weight per share");
  }
  PMSR_RETURN_IF_ERROR(CheckWidths(contributions));
  const size_t width = contributions.front().size();
  HeldShare out;
  out.party = contributions.front().party;
  for (const HeldShare& c : contributions) {
    if (c.party != out.party) {
      return MakeError(ErrorCode::kPartyMismatch,
                       StrCat(int{c.party}, " vs ", int{out.party}));
    }
  }

  if (model.kind == ThreatKind::kAdditiveHE) {
    if (he_key == nullptr) {
      return MakeError(ErrorCode::kConfigInvalid, "missing HE public key");
    }
    out.ciphertexts.assign(width, mpz_class(1));
    for (size_t i = 0; i < contributions.size(); ++i) {
      if (contributions[i].ciphertexts.size() != width) {
        return MakeError(ErrorCode::kMalformedCiphertext, "missing elements");
      }
      const mpz_class k = HeFromSigned(*he_key, weights[i]);
      for (size_t e = 0; e < width; ++e) {
        HECiphertext term{contributions[i].ciphertexts[e]};
        if (weights[i] != 1) {
          PMSR_ASSIGN_OR_RETURN(term, HeScale(*he_key, term, k));
        } else {
          PMSR_RETURN_IF_ERROR(CheckCiphertext(*he_key, term));
        }
        out.ciphertexts[e] = (out.ciphertexts[e] * term.c) % he_key->n_squared;
      }
    }
    return out;
  }

  out.ring.assign(width, 0);
  if (model.kind == ThreatKind::kShamirThreshold) {
    const PrimeField field;
    for (size_t i = 0; i < contributions.size(); ++i) {
      const uint64_t k = field.FromSigned(weights[i]);
      for (size_t e = 0; e < width; ++e) {
        out.ring[e] = field.Add(
            out.ring[e], field.Mul(k, field.Reduce(contributions[i].ring[e])));
      }
    }
    return out;
  }
  // Z_(2^64): unsigned wraparound is the reduction.
  for (size_t i = 0; i < contributions.size(); ++i) {
    const uint64_t k = static_cast<uint64_t>(weights[i]);
    for (size_t e = 0; e < width; ++e) {
      out.ring[e] += k * contributions[i].ring[e];
    }
  }
  return out;
}

absl::StatusOr<HeldShare> DecryptPartial(const HEKeyPair& key,
                                         const HeldShare& folded) {
  HeldShare out;
  out.party = 0;
  for (const mpz_class& c : folded.ciphertexts) {
    PMSR_ASSIGN_OR_RETURN(mpz_class m, HeDecrypt(key, HECiphertext{c}));
    PMSR_ASSIGN_OR_RETURN(int64_t v, HeToSigned(key.pub, m));
    out.ring.push_back(static_cast<uint64_t>(v));
  }
  return out;
}

absl::StatusOr<std::vector<int64_t>> ReconstructAggregate(
    const ThreatModel& model, std::span<const HeldShare> partials) {
  if (model.kind == ThreatKind::kTEEStub) return NotImplementedTee();
  if (partials.empty()) {
    return MakeError(ErrorCode::kInsufficientShares, "no partials");
  }
  PMSR_RETURN_IF_ERROR(CheckWidths(partials));
  const size_t width = partials.front().size();
  std::vector<int64_t> out(width);
  switch (model.kind) {
    case ThreatKind::kSemiHonest3PC: {
      std::vector<AdditiveShare> column(partials.size());
      for (size_t e = 0; e < width; ++e) {
        for (size_t p = 0; p < partials.size(); ++p) {
          column[p] = {partials[p].party, partials[p].ring[e]};
        }
        PMSR_ASSIGN_OR_RETURN(uint64_t raw, ReconstructAdditive(column));
        out[e] = static_cast<int64_t>(raw);
      }
      return out;
    }
    case ThreatKind::kShamirThreshold: {
      const PrimeField field;
      std::vector<ShamirShare> column(partials.size());
      for (size_t e = 0; e < width; ++e) {
        for (size_t p = 0; p < partials.size(); ++p) {
          column[p] = {partials[p].party, partials[p].ring[e]};
        }
        PMSR_ASSIGN_OR_RETURN(uint64_t y,
                              ReconstructShamir(column, model.threshold, field));
        out[e] = field.ToSigned(y);
      }
      return out;
    }
    case ThreatKind::kAdditiveHE:
    case ThreatKind::kPlaintextDP:
      if (partials.size() != 1 || !partials.front().ciphertexts.empty()) {
        return MakeError(ErrorCode::kMalformedWire,
                         "expected one plaintext partial");
      }
      for (size_t e = 0; e < width; ++e) {
        out[e] = static_cast<int64_t>(partials.front().ring[e]);
      }
      return out;
    case ThreatKind::kTEEStub:
      break;
  }
  return NotImplementedTee();
}

size_t ShareHolderCount(const ThreatModel& model) {
  switch (model.kind) {
    case ThreatKind::kSemiHonest3PC:
      return kAdditiveParties;
    case ThreatKind::kShamirThreshold:
      return model.parties;
    case ThreatKind::kAdditiveHE:
    case ThreatKind::kPlaintextDP:
      return 1;
    case ThreatKind::kTEEStub:
      return 0;
  }
  return 0;
}

}  // namespace pmsr::reduce
