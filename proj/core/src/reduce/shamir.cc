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
#include "pmsr/reduce/shamir.h"

#include <set>

#include "pmsr/common/status.h"
#include "pmsr/common/strings.h"

namespace pmsr::reduce {

uint64_t PrimeField::Pow(uint64_t base, uint64_t exp) const {
  uint64_t result = 1 % p_;
  base %= p_;
  while (exp > 0) {
    if (exp & 1) result = Mul(result, base);
    base = Mul(base, base);
    exp >>= 1;
  }
  return result;
}

uint64_t PrimeField::FromSigned(int64_t v) const {
  if (v >= 0) return static_cast<uint64_t>(v) % p_;
  const uint64_t magnitude = static_cast<uint64_t>(-(v + 1)) + 1;
  return Sub(0, magnitude % p_);
}

int64_t PrimeField::ToSigned(uint64_t y) const {
  y %= p_;
  if (y > p_ / 2) return -static_cast<int64_t>(p_ - y);
  return static_cast<int64_t>(y);
}

std::vector<ShamirShare> ShareWithPolynomial(std::span<const uint64_t> coeffs,
                                             uint32_t n,
                                             const PrimeField& field) {
  std::vector<ShamirShare> shares;
  shares.reserve(n);
  for (uint32_t x = 1; x <= n; ++x) {
    // Horner from the highest coefficient.
    uint64_t y = 0;
    for (size_t k = coeffs.size(); k-- > 0;) {
      y = field.Add(field.Mul(y, x), field.Reduce(coeffs[k]));
    }
    shares.push_back({x, y});
  }
  return shares;
}

absl::StatusOr<std::vector<ShamirShare>> ShareShamir(uint64_t secret,
                                                     uint32_t t, uint32_t n,
                                                     Rng& rng,
                                                     const PrimeField& field) {
  if (t < 1 || t > n || n >= field.modulus()) {
    return MakeError(ErrorCode::kInvalidThreshold,
                     StrCat("t=", t, " n=", n));
  }
  std::vector<uint64_t> coeffs(t);
  coeffs[0] = field.Reduce(secret);
  for (uint32_t k = 1; k < t; ++k) coeffs[k] = field.Random(rng);
  return ShareWithPolynomial(coeffs, n, field);
}

absl::StatusOr<uint64_t> ReconstructShamir(std::span<const ShamirShare> shares,
                                           uint32_t t,
                                           const PrimeField& field) {
  if (t < 1 || shares.size() < t) {
    return MakeError(ErrorCode::kInsufficientShares,
                     StrCat(shares.size(), " of ", t));
  }
  std::set<uint64_t> xs;
  for (const ShamirShare& s : shares) {
    if (field.Reduce(s.x) == 0) {
      return MakeError(ErrorCode::kDuplicateX, "x must be non-zero");
    }
    if (!xs.insert(field.Reduce(s.x)).second) {
      return MakeError(ErrorCode::kDuplicateX, StrCat("x=", s.x));
    }
  }
  const auto used = shares.first(t);
  uint64_t secret = 0;
  for (size_t i = 0; i < used.size(); ++i) {
    // l_i(0) = prod_{j != i} x_j / (x_j - x_i)
    uint64_t num = 1;
    uint64_t den = 1;
    for (size_t j = 0; j < used.size(); ++j) {
      if (i == j) continue;
      num = field.Mul(num, field.Reduce(used[j].x));
      den = field.Mul(den, field.Sub(field.Reduce(used[j].x),
                                     field.Reduce(used[i].x)));
    }
    const uint64_t basis = field.Mul(num, field.Inv(den));
    secret = field.Add(secret, field.Mul(field.Reduce(used[i].y), basis));
  }
  return secret;
}

absl::StatusOr<ShamirShare> AddSharesShamir(const ShamirShare& a,
                                            const ShamirShare& b,
                                            const PrimeField& field) {
  if (a.x != b.x) {
    return MakeError(ErrorCode::kEvaluationPointMismatch,
                     StrCat(a.x, " vs ", b.x));
  }
  return ShamirShare{a.x, field.Add(field.Reduce(a.y), field.Reduce(b.y))};
}

}  // namespace pmsr::reduce
