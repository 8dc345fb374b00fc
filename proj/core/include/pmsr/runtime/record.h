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
#ifndef PMSR_RUNTIME_RECORD_H_
#define PMSR_RUNTIME_RECORD_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "pmsr/proposal/types.h"

namespace pmsr::runtime {

enum class Phase : uint8_t {
  kProposed = 0,
  kCollecting = 1,
  kReducing = 2,
  kReleased = 3,
  kAborted = 4,
};

std::string_view PhaseName(Phase phase);

// Legal moves: Proposed -> Collecting, Collecting -> Reducing,
// Reducing -> Released, and any non-terminal phase -> Aborted.
bool IsForwardTransition(Phase from, Phase to);

// True if every consecutive pair in `history` is a forward transition and
// the history starts at Proposed.
bool IsMonotoneHistory(const std::vector<Phase>& history);

inline constexpr std::string_view kInsufficientParticipants =
    "InsufficientParticipants";
inline constexpr std::string_view kQuorumFailure = "QuorumFailure";

struct ComputationRecord {
  proposal::ComputationProposal proposal;
  Phase phase = Phase::kProposed;
  std::vector<Phase> history = {Phase::kProposed};
  uint32_t participants = 0;
  Tick start_tick = 0;
  Tick end_tick = 0;
  std::vector<NodeId> contributors;
  std::vector<double> aggregate;
  std::string abort_reason;

  bool terminal() const {
    return phase == Phase::kReleased || phase == Phase::kAborted;
  }

  // PhaseClosed if `next` is not a forward move from the current phase.
  absl::Status Advance(Phase next);
};

}  // namespace pmsr::runtime

#endif  // PMSR_RUNTIME_RECORD_H_
