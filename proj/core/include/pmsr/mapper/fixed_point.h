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
#ifndef PMSR_MAPPER_FIXED_POINT_H_
#define PMSR_MAPPER_FIXED_POINT_H_

#include <compare>
#include <cstdint>

#include "absl/status/statusor.h"

namespace pmsr::mapper {

// A real value scaled by 2^16 and stored as an element of Z_(2^64) in two's
// complement, so that ring addition of encodings is addition of values.
struct FixedPoint {
  uint64_t raw = 0;

  int64_t as_signed() const { return static_cast<int64_t>(raw); }
  friend auto operator<=>(const FixedPoint&, const FixedPoint&) = default;
};

inline constexpr int kFractionalBits = 16;
inline constexpr double kScale = 65536.0;
// |value| must stay strictly below 2^47.
inline constexpr double kMaxMagnitude = 140737488355328.0;

// Round-half-to-even on value * 2^16. Fails with OutOfRange when
// |value| >= 2^47 or the value is not finite.
absl::StatusOr<FixedPoint> EncodeFixed(double value);

double DecodeFixed(FixedPoint fp);

// Decodes a signed scaled integer (e.g. an aggregate folded in a wider ring).
inline double DecodeScaled(int64_t scaled) {
  return static_cast<double>(scaled) / kScale;
}

}  // namespace pmsr::mapper

#endif  // PMSR_MAPPER_FIXED_POINT_H_
