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
#ifndef PMSR_TRANSPORT_MESSAGES_H_
#define PMSR_TRANSPORT_MESSAGES_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pmsr/common/bytes.h"
#include "pmsr/proposal/signing.h"
#include "pmsr/proposal/types.h"

namespace pmsr::transport {

struct NodeAddress {
  NodeId index = 0;
  Bytes pubkey;
};

struct ProposalMsg {
  proposal::SignedProposal signed_proposal;
  uint32_t ttl = 0;
};

// One share of one contribution, addressed to one quorum member. `wire` uses
// the share submission format of pmsr/reduce/backend.h.
struct ShareSubmit {
  proposal::ComputationId id;
  NodeId contributor = 0;
  Bytes wire;
};

// Traffic between quorum members during the reduce step.
//
//   kRoster       member -> leader: contributors whose share the member holds
//   kFinalRoster  leader -> members: the agreed contributor set
//   kFolded       member -> leader: the member's folded partial in `wire`
//   kDecrypt      HE leader -> key holder: folded ciphertexts in `wire`
enum class PartialStage : uint8_t {
  kRoster = 0,
  kFinalRoster = 1,
  kFolded = 2,
  kDecrypt = 3,
};

struct ReducePartial {
  proposal::ComputationId id;
  PartialStage stage = PartialStage::kRoster;
  std::vector<NodeId> contributors;
  Bytes wire;
};

struct AggregateRelease {
  proposal::ComputationId id;
  std::vector<double> values;
  uint32_t participants = 0;
};

struct Abort {
  proposal::ComputationId id;
  std::string reason;
};

using Payload =
    std::variant<ProposalMsg, ShareSubmit, ReducePartial, AggregateRelease,
                 Abort>;

// proposal, share_submit, reduce_partial, aggregate_release or abort.
std::string_view PayloadKindName(const Payload& payload);

const proposal::ComputationId& PayloadComputationId(const Payload& payload);

struct Envelope {
  NodeId from = 0;
  NodeId to = 0;
  Payload payload;
  Tick send_tick = 0;
  Tick deliver_tick = 0;
  uint64_t seq = 0;
};

}  // namespace pmsr::transport

#endif  // PMSR_TRANSPORT_MESSAGES_H_
