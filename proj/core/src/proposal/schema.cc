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
#include "pmsr/proposal/schema.h"

#include <set>

#include "pmsr/common/status.h"

namespace pmsr::proposal {

std::vector<mapper::FixedPoint> MapOutput::Flatten() const {
  std::vector<mapper::FixedPoint> out;
  for (const OutputValue& v : values) {
    out.insert(out.end(), v.elements.begin(), v.elements.end());
  }
  return out;
}

absl::Status ValidateOutput(const MapOutput& value,
                            const OutputSchema& schema) {
  std::set<std::string> declared;
  for (const SchemaField& field : schema.fields) {
    declared.insert(field.name);
    const OutputValue* match = nullptr;
    int occurrences = 0;
    for (const OutputValue& v : value.values) {
      if (v.name == field.name) {
        match = &v;
        ++occurrences;
      }
    }
    if (occurrences != 1 || match->kind != field.kind ||
        match->elements.size() != field.Width()) {
      return MakeError(ErrorCode::kSchemaViolation, field.name);
    }
  }
  for (const OutputValue& v : value.values) {
    if (!declared.contains(v.name)) {
      return MakeError(ErrorCode::kSchemaViolation, v.name);
    }
  }
  return absl::OkStatus();
}

}  // namespace pmsr::proposal
