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
#ifndef PMSR_REDUCE_SHAMIR_H_
#define PMSR_REDUCE_SHAMIR_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "pmsr/common/random.h"

namespace pmsr::reduce {

inline constexpr uint64_t kMersenne61 = (uint64_t{1} << 61) - 1;

// Arithmetic modulo a prime p < 2^63.
class PrimeField {
 public:
  explicit constexpr PrimeField(uint64_t p = kMersenne61) : p_(p) {}

  uint64_t modulus() const { return p_; }
  uint64_t Reduce(uint64_t v) const { return v % p_; }
  uint64_t Add(uint64_t a, uint64_t b) const {
    uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  uint64_t Sub(uint64_t a, uint64_t b) const {
    return a >= b ? a - b : a + p_ - b;
  }
  uint64_t Mul(uint64_t a, uint64_t b) const {
    return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % p_);
  }
  uint64_t Pow(uint64_t base, uint64_t exp) const;
  // Fermat inverse; `a` must be non-zero mod p.
  uint64_t Inv(uint64_t a) const { return Pow(a, p_ - 2); }
  uint64_t Random(Rng& rng) const { return rng.Below(p_); }

  // Signed integers map to their residues; FromSigned/ToSigned use the
  // centred representative in (-p/2, p/2].
  uint64_t FromSigned(int64_t v) const;
  int64_t ToSigned(uint64_t y) const;

 private:
  uint64_t p_;
};

struct ShamirShare {
  uint64_t x = 0;  // non-zero evaluation point
  uint64_t y = 0;

  friend bool operator==(const ShamirShare&, const ShamirShare&) = default;
};

// Evaluates the polynomial with coefficients `coeffs` (constant term first)
// at x = 1..n.
std::vector<ShamirShare> ShareWithPolynomial(std::span<const uint64_t> coeffs,
                                             uint32_t n,
                                             const PrimeField& field);

// Random degree t-1 polynomial with f(0) = secret; share i is (i, f(i)).
// Requires 1 <= t <= n < p.
absl::StatusOr<std::vector<ShamirShare>> ShareShamir(
    uint64_t secret, uint32_t t, uint32_t n, Rng& rng,
    const PrimeField& field = PrimeField());

// Lagrange interpolation at 0 over the first t shares. Fails with
// InsufficientShares on fewer than t shares and DuplicateX on repeated
// evaluation points.
absl::StatusOr<uint64_t> ReconstructShamir(
    std::span<const ShamirShare> shares, uint32_t t,
    const PrimeField& field = PrimeField());

absl::StatusOr<ShamirShare> AddSharesShamir(
    const ShamirShare& a, const ShamirShare& b,
    const PrimeField& field = PrimeField());

}  // namespace pmsr::reduce

#endif  // PMSR_REDUCE_SHAMIR_H_
