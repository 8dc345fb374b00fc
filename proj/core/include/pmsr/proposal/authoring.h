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
#ifndef PMSR_PROPOSAL_AUTHORING_H_
#define PMSR_PROPOSAL_AUTHORING_H_

#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "pmsr/proposal/types.h"

namespace pmsr::proposal {

// Human-readable proposal files. The format is YAML with keys named exactly
// as the ComputationProposal fields:
//
//   id: 00112233445566778899aabbccddeeff
//   deadline: 40
//   min_participants: 500
//   budget: 0
//   targets: []
//   quorum: [1000, 1001, 1002]
//   map_spec: {name: rolling_mean, field: score, window: 365,
//              bounds: [0, 100]}
//   map_post: clamp(0,100)
//   output_schema:
//     - {name: mean, kind: fixed64}
//   reduce_spec: {name: mean}
//   threat_model: {variant: semi_honest_3pc}
//   proposer: <64 hex chars>
//   epsilon: 0.5
//
// `proposer` may be omitted when `allow_missing_proposer` is set; the
// caller then fills it from the signing key. An omitted reduce_spec
// compatibility defaults to every threat model the function supports.
absl::StatusOr<ComputationProposal> ParseProposalText(
    std::string_view text, bool allow_missing_proposer = false);

// Emits the authoring format; ParseProposalText(FormatProposalText(p)) == p.
std::string FormatProposalText(const ComputationProposal& proposal);

}  // namespace pmsr::proposal

#endif  // PMSR_PROPOSAL_AUTHORING_H_
