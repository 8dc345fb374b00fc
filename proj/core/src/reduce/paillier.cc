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
#include "pmsr/reduce/paillier.h"

#include <vector>

#include "pmsr/common/status.h"
#include "pmsr/common/strings.h"

namespace pmsr::reduce {
namespace {

mpz_class RandomBits(int bits, Rng& rng) {
  const size_t words = (static_cast<size_t>(bits) + 63) / 64;
  std::vector<uint64_t> buffer(words);
  for (uint64_t& w : buffer) w = rng.NextU64();
  mpz_class out;
  mpz_import(out.get_mpz_t(), words, -1, sizeof(uint64_t), 0, 0,
             buffer.data());
  mpz_class mask = (mpz_class(1) << bits) - 1;
  return out & mask;
}

mpz_class RandomPrime(int bits, Rng& rng) {
  mpz_class candidate = RandomBits(bits, rng);
  // Top two bits set so p * q has exactly 2 * bits bits.
  mpz_setbit(candidate.get_mpz_t(), bits - 1);
  mpz_setbit(candidate.get_mpz_t(), bits - 2);
  mpz_setbit(candidate.get_mpz_t(), 0);
  mpz_class prime;
  mpz_nextprime(prime.get_mpz_t(), candidate.get_mpz_t());
  return prime;
}

mpz_class RandomUnit(const mpz_class& n, Rng& rng) {
  const int bits = static_cast<int>(mpz_sizeinbase(n.get_mpz_t(), 2)) + 64;
  while (true) {
    mpz_class r = RandomBits(bits, rng) % n;
    if (r == 0) continue;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
    if (g == 1) return r;
  }
}

}  // namespace

absl::StatusOr<HEKeyPair> HeKeygen(int bits, Rng& rng) {
  if (bits < kMinHEBits || bits % 2 != 0) {
    return MakeError(ErrorCode::kConfigInvalid,
                     StrCat("modulus bits ", bits));
  }
  HEKeyPair key;
  do {
    key.p = RandomPrime(bits / 2, rng);
    key.q = RandomPrime(bits / 2, rng);
  } while (key.p == key.q);
  key.pub.n = key.p * key.q;
  key.pub.n_squared = key.pub.n * key.pub.n;
  key.pub.generator = key.pub.n + 1;
  mpz_class pm1 = key.p - 1;
  mpz_class qm1 = key.q - 1;
  mpz_lcm(key.lambda.get_mpz_t(), pm1.get_mpz_t(), qm1.get_mpz_t());
  if (mpz_invert(key.mu.get_mpz_t(), key.lambda.get_mpz_t(),
                 key.pub.n.get_mpz_t()) == 0) {
    return MakeError(ErrorCode::kConfigInvalid, "lambda not invertible");
  }
  return key;
}

absl::StatusOr<HECiphertext> HeEncrypt(const HEPublicKey& key,
                                       const mpz_class& m, Rng& rng) {
  if (m < 0 || m >= key.n) {
    return MakeError(ErrorCode::kPlaintextOutOfRange);
  }
  const mpz_class r = RandomUnit(key.n, rng);
  // (1 + n)^m = 1 + m n (mod n^2).
  mpz_class gm = (1 + m * key.n) % key.n_squared;
  mpz_class rn;
  mpz_powm(rn.get_mpz_t(), r.get_mpz_t(), key.n.get_mpz_t(),
           key.n_squared.get_mpz_t());
  return HECiphertext{(gm * rn) % key.n_squared};
}

absl::Status CheckCiphertext(const HEPublicKey& key, const HECiphertext& ct) {
  if (ct.c <= 0 || ct.c >= key.n_squared) {
    return MakeError(ErrorCode::kMalformedCiphertext, "out of range");
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), ct.c.get_mpz_t(), key.n.get_mpz_t());
  if (g != 1) {
    return MakeError(ErrorCode::kMalformedCiphertext, "not a unit mod n");
  }
  return absl::OkStatus();
}

absl::StatusOr<HECiphertext> HeAdd(const HEPublicKey& key,
                                   const HECiphertext& a,
                                   const HECiphertext& b) {
  PMSR_RETURN_IF_ERROR(CheckCiphertext(key, a));
  PMSR_RETURN_IF_ERROR(CheckCiphertext(key, b));
  return HECiphertext{(a.c * b.c) % key.n_squared};
}

absl::StatusOr<HECiphertext> HeScale(const HEPublicKey& key,
                                     const HECiphertext& a,
                                     const mpz_class& k) {
  PMSR_RETURN_IF_ERROR(CheckCiphertext(key, a));
  if (k < 0) return MakeError(ErrorCode::kPlaintextOutOfRange, "negative k");
  HECiphertext out;
  mpz_powm(out.c.get_mpz_t(), a.c.get_mpz_t(), k.get_mpz_t(),
           key.n_squared.get_mpz_t());
  return out;
}

namespace {

// m mod `prime` via L_prime(c^(prime-1) mod prime^2) * h_prime, with
// h_prime = L_prime(g^(prime-1) mod prime^2)^-1 mod prime. For g = n + 1,
// g^(prime-1) = 1 + (prime-1) n mod prime^2.
mpz_class DecryptModPrime(const HEPublicKey& pub, const mpz_class& prime,
                          const mpz_class& c) {
  const mpz_class prime_sq = prime * prime;
  const mpz_class e = prime - 1;
  mpz_class u;
  mpz_powm(u.get_mpz_t(), c.get_mpz_t(), e.get_mpz_t(), prime_sq.get_mpz_t());
  const mpz_class g = (1 + e * pub.n) % prime_sq;
  mpz_class h = (g - 1) / prime;
  mpz_invert(h.get_mpz_t(), h.get_mpz_t(), prime.get_mpz_t());
  return mpz_class((((u - 1) / prime) * h) % prime);
}

}  // namespace

absl::StatusOr<mpz_class> HeDecrypt(const HEKeyPair& key,
                                    const HECiphertext& ct) {
  PMSR_RETURN_IF_ERROR(CheckCiphertext(key.pub, ct));
  const mpz_class mp = DecryptModPrime(key.pub, key.p, ct.c);
  const mpz_class mq = DecryptModPrime(key.pub, key.q, ct.c);
  mpz_class q_inv;
  mpz_invert(q_inv.get_mpz_t(), key.q.get_mpz_t(), key.p.get_mpz_t());
  mpz_class h = ((mp - mq) * q_inv) % key.p;
  if (h < 0) h += key.p;
  return mpz_class(mq + h * key.q);
}

mpz_class HeFromSigned(const HEPublicKey& key, int64_t v) {
  mpz_class m;
  if (v >= 0) {
    mpz_set_ui(m.get_mpz_t(), static_cast<unsigned long>(v));
  } else {
    const uint64_t magnitude = static_cast<uint64_t>(-(v + 1)) + 1;
    mpz_set_ui(m.get_mpz_t(), static_cast<unsigned long>(magnitude));
    m = key.n - m;
  }
  return m % key.n;
}

absl::StatusOr<int64_t> HeToSigned(const HEPublicKey& key,
                                   const mpz_class& m) {
  mpz_class centred = m % key.n;
  if (centred > key.n / 2) centred -= key.n;
  if (!mpz_fits_slong_p(centred.get_mpz_t())) {
    return MakeError(ErrorCode::kOutOfRange, "aggregate exceeds 64 bits");
  }
  return static_cast<int64_t>(centred.get_si());
}

Bytes MpzToBytes(const mpz_class& v) {
  size_t count = 0;
  Bytes out((mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8);
  mpz_export(out.data(), &count, 1, 1, 1, 0, v.get_mpz_t());
  out.resize(count);
  return out;
}

mpz_class MpzFromBytes(std::span<const uint8_t> bytes) {
  mpz_class v;
  if (!bytes.empty()) {
    mpz_import(v.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
  }
  return v;
}

}  // namespace pmsr::reduce
