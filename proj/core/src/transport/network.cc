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
#include "pmsr/transport/network.h"

#include <sodium.h>

#include <algorithm>
#include <cmath>

#include "pmsr/common/status.h"
#include "pmsr/common/strings.h"

namespace pmsr::transport {

absl::Status NetworkConfig::Validate() const {
  if (latency_min < 1) {
    return MakeError(ErrorCode::kConfigInvalid, "latency_min must be >= 1");
  }
  if (latency_min > latency_max) {
    return MakeError(ErrorCode::kConfigInvalid,
                     "latency_min exceeds latency_max");
  }
  if (!(drop_rate >= 0.0 && drop_rate <= 1.0)) {
    return MakeError(ErrorCode::kConfigInvalid, "drop_rate outside [0, 1]");
  }
  if (fanout < 1) return MakeError(ErrorCode::kConfigInvalid, "fanout < 1");
  return absl::OkStatus();
}

absl::StatusOr<Network> Network::Create(const NetworkConfig& config) {
  PMSR_RETURN_IF_ERROR(config.Validate());
  return Network(config);
}

absl::Status Network::AddNode(NodeAddress address) {
  const NodeId index = address.index;
  if (members_.contains(index)) {
    return MakeError(ErrorCode::kConfigInvalid,
                     StrCat("duplicate node index ", index));
  }
  members_.emplace(index, std::move(address));
  member_list_.insert(
      std::upper_bound(member_list_.begin(), member_list_.end(), index), index);
  return absl::OkStatus();
}

absl::Status Network::SendDirect(NodeId from, NodeId to, Payload payload) {
  if (!HasNode(from)) {
    return MakeError(ErrorCode::kUnknownAddress, StrCat("from ", from));
  }
  if (!HasNode(to)) {
    return MakeError(ErrorCode::kUnknownAddress, StrCat("to ", to));
  }
  Envelope env;
  env.from = from;
  env.to = to;
  env.payload = std::move(payload);
  env.send_tick = now_;
  env.seq = next_seq_++;
  Rng& rng =
      std::holds_alternative<ProposalMsg>(env.payload) ? gossip_rng_ : rng_;
  const bool drop = rng.Bernoulli(config_.drop_rate);
  env.deliver_tick =
      now_ + rng.Between(config_.latency_min, config_.latency_max);
  ++sent_;
  if (observer_) observer_(env, drop);
  if (drop) {
    ++dropped_;
    return absl::OkStatus();
  }
  queue_.push(std::move(env));
  return absl::OkStatus();
}

std::vector<NodeId> Network::SamplePeers(NodeId self) {
  const size_t others = member_list_.size() - (HasNode(self) ? 1 : 0);
  const size_t want = std::min<size_t>(config_.fanout, others);
  std::vector<NodeId> picked;
  picked.reserve(want);
  while (picked.size() < want) {
    NodeId candidate = member_list_[gossip_rng_.Below(member_list_.size())];
    if (candidate == self ||
        std::find(picked.begin(), picked.end(), candidate) != picked.end()) {
      continue;
    }
    picked.push_back(candidate);
  }
  return picked;
}

void Network::Forward(NodeId self,
                      const proposal::SignedProposal& signed_proposal,
                      uint32_t ttl) {
  for (NodeId peer : SamplePeers(self)) {
    // Both endpoints are members, so this cannot fail.
    SendDirect(self, peer, ProposalMsg{signed_proposal, ttl}).IgnoreError();
  }
}

absl::Status Network::BroadcastGossip(
    NodeId origin, const proposal::SignedProposal& signed_proposal) {
  if (!HasNode(origin)) {
    return MakeError(ErrorCode::kUnknownAddress, StrCat("origin ", origin));
  }
  if (!proposal::VerifyProposal(signed_proposal)) {
    return MakeError(ErrorCode::kInvalidSignature,
                     signed_proposal.proposal.id.Hex());
  }
  seen_[origin].insert(signed_proposal.proposal.id);
  Forward(origin, signed_proposal, config_.ttl);
  return absl::OkStatus();
}

bool Network::OnProposalDelivered(NodeId self, const ProposalMsg& msg) {
  const proposal::ComputationId& id = msg.signed_proposal.proposal.id;
  if (!seen_[self].insert(id).second) return false;
  if (msg.ttl > 0) Forward(self, msg.signed_proposal, msg.ttl - 1);
  return true;
}

bool Network::HasSeen(NodeId node, const proposal::ComputationId& id) const {
  auto it = seen_.find(node);
  return it != seen_.end() && it->second.contains(id);
}

std::vector<Envelope> Network::Step() {
  ++now_;
  std::vector<Envelope> out;
  while (!queue_.empty() && queue_.top().deliver_tick <= now_) {
    out.push_back(queue_.top());
    queue_.pop();
  }
  for (const Envelope& env : out) {
    ++delivered_;
    trace_ += StrCat(env.deliver_tick, ",", env.from, ",", env.to, ",",
                     PayloadKindName(env.payload), ",",
                     PayloadComputationId(env.payload).Hex(), "\n");
  }
  return out;
}

std::optional<Tick> Network::NextDeliveryTick() const {
  if (queue_.empty()) return std::nullopt;
  return queue_.top().deliver_tick;
}

std::string Network::TraceHash() const {
  std::array<uint8_t, crypto_hash_sha256_BYTES> digest{};
  crypto_hash_sha256(digest.data(),
                     reinterpret_cast<const unsigned char*>(trace_.data()),
                     trace_.size());
  return ToHex(digest);
}

}  // namespace pmsr::transport
