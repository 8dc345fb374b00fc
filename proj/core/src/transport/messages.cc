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
#include "pmsr/transport/messages.h"

namespace pmsr::transport {

std::string_view PayloadKindName(const Payload& payload) {
  switch (payload.index()) {
    case 0:
      return "proposal";
    case 1:
      return "share_submit";
    case 2:
      return "reduce_partial";
    case 3:
      return "aggregate_release";
    default:
      return "abort";
  }
}

const proposal::ComputationId& PayloadComputationId(const Payload& payload) {
  return std::visit(
      [](const auto& p) -> const proposal::ComputationId& {
        if constexpr (std::is_same_v<std::decay_t<decltype(p)>, ProposalMsg>) {
          return p.signed_proposal.proposal.id;
        } else {
          return p.id;
        }
      },
      payload);
}

}  // namespace pmsr::transport
