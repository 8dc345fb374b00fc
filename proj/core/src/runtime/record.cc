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
#include "pmsr/runtime/record.h"

#include "pmsr/common/status.h"
#include "pmsr/common/strings.h"

namespace pmsr::runtime {

std::string_view PhaseName(Phase phase) {
  switch (phase) {
    case Phase::kProposed:
      return "Proposed";
    case Phase::kCollecting:
      return "Collecting";
    case Phase::kReducing:
      return "Reducing";
    case Phase::kReleased:
      return "Released";
    case Phase::kAborted:
      return "Aborted";
  }
  return "Unknown";
}

bool IsForwardTransition(Phase from, Phase to) {
  switch (to) {
    case Phase::kCollecting:
      return from == Phase::kProposed;
    case Phase::kReducing:
      return from == Phase::kCollecting;
    case Phase::kReleased:
      return from == Phase::kReducing;
    case Phase::kAborted:
      return from != Phase::kReleased && from != Phase::kAborted;
    case Phase::kProposed:
      return false;
  }
  return false;
}

bool IsMonotoneHistory(const std::vector<Phase>& history) {
  if (history.empty() || history.front() != Phase::kProposed) return false;
  for (size_t i = 1; i < history.size(); ++i) {
    if (!IsForwardTransition(history[i - 1], history[i])) return false;
  }
  return true;
}

absl::Status ComputationRecord::Advance(Phase next) {
  if (!IsForwardTransition(phase, next)) {
    return MakeError(ErrorCode::kPhaseClosed,
                     StrCat(PhaseName(phase), " -> ", PhaseName(next)));
  }
  phase = next;
  history.push_back(next);
  return absl::OkStatus();
}

}  // namespace pmsr::runtime
