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
#ifndef PMSR_PROPOSAL_SCHEMA_H_
#define PMSR_PROPOSAL_SCHEMA_H_

#include <string>
#include <vector>

#include "absl/status/status.h"
#include "pmsr/mapper/fixed_point.h"
#include "pmsr/proposal/types.h"

namespace pmsr::proposal {

// One named field of a map output. Every element is carried in fixed point,
// counts included, so all backends share a single element encoding.
struct OutputValue {
  std::string name;
  FieldKind kind = FieldKind::kFixed64;
  std::vector<mapper::FixedPoint> elements;

  friend bool operator==(const OutputValue&, const OutputValue&) = default;
};

struct MapOutput {
  ComputationId computation_id;
  std::vector<OutputValue> values;

  // Elements of all fields concatenated in field order.
  std::vector<mapper::FixedPoint> Flatten() const;

  friend bool operator==(const MapOutput&, const MapOutput&) = default;
};

// ok iff `value` carries exactly the schema's fields with matching kinds and
// element counts. Failure is SchemaViolation naming the first offending
// field: schema fields are checked in order, then undeclared extras.
absl::Status ValidateOutput(const MapOutput& value, const OutputSchema& schema);

}  // namespace pmsr::proposal

#endif  // PMSR_PROPOSAL_SCHEMA_H_
