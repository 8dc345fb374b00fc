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
#ifndef PMSR_REDUCE_PAILLIER_H_
#define PMSR_REDUCE_PAILLIER_H_

#include <gmpxx.h>

#include <cstdint>
#include <span>

#include "absl/status/statusor.h"
#include "pmsr/common/bytes.h"
#include "pmsr/common/random.h"

namespace pmsr::reduce {

// Additively homomorphic encryption backend (Paillier with g = n + 1).
// Multiplying ciphertexts mod n^2 adds plaintexts mod n.

struct HEPublicKey {
  mpz_class n;
  mpz_class n_squared;
  mpz_class generator;  // n + 1
};

struct HEKeyPair {
  HEPublicKey pub;
  mpz_class p;
  mpz_class q;
  mpz_class lambda;  // lcm(p - 1, q - 1)
  mpz_class mu;      // lambda^-1 mod n
};

struct HECiphertext {
  mpz_class c;
};

inline constexpr int kMinHEBits = 512;

// Single-dealer key generation with primes drawn from `rng`, so a seeded
// generator yields a reproducible key. `bits` is the modulus size.
absl::StatusOr<HEKeyPair> HeKeygen(int bits, Rng& rng);

// PlaintextOutOfRange unless 0 <= m < n.
absl::StatusOr<HECiphertext> HeEncrypt(const HEPublicKey& key,
                                       const mpz_class& m, Rng& rng);

// Ciphertext product; decrypts to the plaintext sum mod n.
absl::StatusOr<HECiphertext> HeAdd(const HEPublicKey& key,
                                   const HECiphertext& a,
                                   const HECiphertext& b);

// c^k; decrypts to k * m mod n.
absl::StatusOr<HECiphertext> HeScale(const HEPublicKey& key,
                                     const HECiphertext& a,
                                     const mpz_class& k);

// MalformedCiphertext unless 0 < c < n^2 and gcd(c, n) = 1.
absl::StatusOr<mpz_class> HeDecrypt(const HEKeyPair& key,
                                    const HECiphertext& ct);

absl::Status CheckCiphertext(const HEPublicKey& key, const HECiphertext& ct);

// Signed integers map to residues mod n; ToSigned uses the centred
// representative.
mpz_class HeFromSigned(const HEPublicKey& key, int64_t v);
absl::StatusOr<int64_t> HeToSigned(const HEPublicKey& key, const mpz_class& m);

// Big-endian magnitude bytes.
Bytes MpzToBytes(const mpz_class& v);
mpz_class MpzFromBytes(std::span<const uint8_t> bytes);

}  // namespace pmsr::reduce

#endif  // PMSR_REDUCE_PAILLIER_H_
