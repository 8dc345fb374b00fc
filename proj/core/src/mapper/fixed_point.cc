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
#include "pmsr/mapper/fixed_point.h"

#include <cmath>
#include <string>

#include "pmsr/common/status.h"

namespace pmsr::mapper {

absl::StatusOr<FixedPoint> EncodeFixed(double value) {
  if (!std::isfinite(value) || std::fabs(value) >= kMaxMagnitude) {
    return MakeError(ErrorCode::kOutOfRange, std::to_string(value));
  }
  // Rounds half to even under the default floating-point rounding mode.
  const double scaled = std::nearbyint(value * kScale);
  const int64_t signed_raw = static_cast<int64_t>(scaled);
  return FixedPoint{static_cast<uint64_t>(signed_raw)};
}

double DecodeFixed(FixedPoint fp) { return DecodeScaled(fp.as_signed()); }

}  // namespace pmsr::mapper
