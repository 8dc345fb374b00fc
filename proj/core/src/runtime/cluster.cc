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
#include "pmsr/runtime/cluster.h"

#include <algorithm>

#include "pmsr/common/status.h"
#include "pmsr/common/strings.h"

namespace pmsr::runtime {

using proposal::ComputationId;

absl::StatusOr<std::unique_ptr<Cluster>> Cluster::Create(
    const ClusterOptions& options) {
  PMSR_ASSIGN_OR_RETURN(transport::Network network,
                        transport::Network::Create(options.network));
  if (options.he_bits < reduce::kMinHEBits) {
    return MakeError(ErrorCode::kConfigInvalid,
                     StrCat("he_bits below ", reduce::kMinHEBits));
  }
  return std::unique_ptr<Cluster>(new Cluster(options, std::move(network)));
}

Cluster::Cluster(const ClusterOptions& options, transport::Network network)
    : options_(options),
      network_(std::make_unique<transport::Network>(std::move(network))) {
  network_->SetSendObserver(
      [this](const transport::Envelope& env, bool dropped) {
        Observe(env, dropped);
      });
}

absl::StatusOr<NodeId> Cluster::Register(const proposal::KeyPair& keys) {
  const NodeId id = next_id_;
  PMSR_RETURN_IF_ERROR(network_->AddNode({id, keys.public_key}));
  ++next_id_;
  node_of_key_.emplace(ToHex(keys.public_key), id);
  return id;
}

absl::StatusOr<NodeId> Cluster::AddLightNode(proposal::KeyPair keys,
                                             LightNodeOptions options) {
  PMSR_RETURN_IF_ERROR(options.policy.Validate());
  PMSR_ASSIGN_OR_RETURN(NodeId id, Register(keys));
  transport::NodeAddress address{id, keys.public_key};
  lights_.emplace(id, std::make_unique<LightNode>(
                          std::move(address), std::move(keys),
                          std::move(options)));
  light_ids_.push_back(id);
  return id;
}

absl::StatusOr<NodeId> Cluster::AddHeavyNode(proposal::KeyPair keys) {
  PMSR_ASSIGN_OR_RETURN(NodeId id, Register(keys));
  heavies_.emplace(id, std::make_unique<HeavyNode>(
                           transport::NodeAddress{id, keys.public_key}));
  heavy_ids_.push_back(id);
  return id;
}

absl::StatusOr<NodeId> Cluster::AddProposer(proposal::KeyPair keys,
                                            std::string identity) {
  PMSR_ASSIGN_OR_RETURN(NodeId id, Register(keys));
  auto node = std::make_unique<ProposerNode>();
  node->address = {id, keys.public_key};
  node->keys = std::move(keys);
  node->identity = std::move(identity);
  proposers_.emplace(id, std::move(node));
  return id;
}

absl::Status Cluster::Schedule(Tick at, NodeId proposer,
                               proposal::SignedProposal signed_proposal) {
  if (!proposers_.contains(proposer)) {
    return MakeError(ErrorCode::kUnknownAddress,
                     StrCat("proposer ", proposer));
  }
  if (!proposal::VerifyProposal(signed_proposal)) {
    return MakeError(ErrorCode::kInvalidSignature);
  }
  const proposal::ComputationProposal& p = signed_proposal.proposal;
  if (p.deadline <= at) {
    return MakeError(ErrorCode::kInvalidProposal,
                     "deadline: must be after the issue tick");
  }
  for (NodeId member : p.quorum) {
    if (!heavies_.contains(member)) {
      return MakeError(ErrorCode::kQuorumMemberUnavailable,
                       StrCat("quorum member ", member));
    }
  }
  for (NodeId target : p.targets) {
    if (!network_->HasNode(target)) {
      return MakeError(ErrorCode::kUnknownAddress, StrCat("target ", target));
    }
  }
  if (pending_.contains(p.id) || issue_ticks_.contains(p.id)) {
    return MakeError(ErrorCode::kInvalidProposal, "id: already issued");
  }
  const ComputationId id = p.id;
  pending_.emplace(id, std::move(signed_proposal));
  SetTimer(proposer, at, TimerKind::kIssue, id);
  return absl::OkStatus();
}

void Cluster::Issue(NodeId proposer, const ComputationId& id) {
  const proposal::SignedProposal& sp = pending_.at(id);
  const proposal::ComputationProposal& p = sp.proposal;
  issue_ticks_[id] = now();
  std::vector<NodeId> direct(p.quorum.begin(), p.quorum.end());
  if (p.IsTargeted()) {
    direct.insert(direct.end(), p.targets.begin(), p.targets.end());
  }
  std::vector<NodeId> sent;
  for (NodeId to : direct) {
    if (to == proposer ||
        std::find(sent.begin(), sent.end(), to) != sent.end()) {
      continue;
    }
    sent.push_back(to);
    Send(proposer, to, transport::ProposalMsg{sp, 0});
  }
  if (!p.IsTargeted()) {
    SetTimer(proposer, now() + options_.network.latency_max,
             TimerKind::kStartGossip, id);
  }
  SetTimer(proposer,
           p.deadline + options_.reduce_timeout +
               2 * options_.network.latency_max + 1,
           TimerKind::kOutcomeCheck, id);
}

void Cluster::Send(NodeId from, NodeId to, transport::Payload payload) {
  absl::Status status = network_->SendDirect(from, to, std::move(payload));
  if (!status.ok()) CountError(status);
}

void Cluster::SetTimer(NodeId node, Tick at, TimerKind kind,
                       const ComputationId& id) {
  timers_.push(Timer{at, next_timer_seq_++, node, kind, id});
}

void Cluster::Observe(const transport::Envelope& envelope, bool dropped) {
  (void)dropped;
  auditor_.Inspect(envelope);
  if (std::holds_alternative<transport::ShareSubmit>(envelope.payload)) {
    ++share_sends_[envelope.from];
  }
  if (const auto* release =
          std::get_if<transport::AggregateRelease>(&envelope.payload)) {
    if (proposers_.contains(envelope.to)) ++release_sends_[release->id];
  }
}

void Cluster::CountError(const absl::Status& status) {
  std::optional<ErrorCode> code = ErrorCodeOf(status);
  ++handler_errors_[code ? std::string(ErrorCodeName(*code))
                         : std::string(absl::StatusCodeToString(
                               status.code()))];
}

void Cluster::Dispatch(const transport::Envelope& env) {
  const NodeId to = env.to;
  auto light = lights_.find(to);
  auto heavy = heavies_.find(to);
  auto proposer = proposers_.find(to);

  if (const auto* msg = std::get_if<transport::ProposalMsg>(&env.payload)) {
    if (!network_->OnProposalDelivered(to, *msg)) return;
    if (light != lights_.end()) {
      light->second->OnProposal(*this, msg->signed_proposal);
    } else if (heavy != heavies_.end()) {
      heavy->second->OnProposal(*this, msg->signed_proposal);
    }
    return;
  }
  if (const auto* submit = std::get_if<transport::ShareSubmit>(&env.payload)) {
    if (heavy == heavies_.end()) return;
    absl::Status status = heavy->second->OnShare(*this, env.from, *submit);
    if (!status.ok()) CountError(status);
    return;
  }
  if (const auto* partial =
          std::get_if<transport::ReducePartial>(&env.payload)) {
    if (heavy == heavies_.end()) return;
    absl::Status status = heavy->second->OnPartial(*this, env.from, *partial);
    if (!status.ok()) CountError(status);
    return;
  }
  if (const auto* release =
          std::get_if<transport::AggregateRelease>(&env.payload)) {
    if (heavy != heavies_.end()) heavy->second->OnRelease(*this, *release);
    if (proposer != proposers_.end() &&
        !proposer->second->releases.contains(release->id)) {
      proposer->second->releases.emplace(release->id, *release);
      proposer->second->release_ticks.emplace(release->id, now());
    }
    return;
  }
  if (const auto* abort = std::get_if<transport::Abort>(&env.payload)) {
    if (heavy != heavies_.end()) heavy->second->OnAbort(*this, *abort);
    if (proposer != proposers_.end()) {
      proposer->second->aborts.emplace(abort->id, abort->reason);
    }
  }
}

void Cluster::Fire(const Timer& timer) {
  switch (timer.kind) {
    case TimerKind::kIssue:
      Issue(timer.node, timer.id);
      return;
    case TimerKind::kStartGossip: {
      absl::Status status =
          network_->BroadcastGossip(timer.node, pending_.at(timer.id));
      if (!status.ok()) CountError(status);
      return;
    }
    case TimerKind::kOutcomeCheck: {
      if (outcomes_.contains(timer.id)) return;
      ComputationRecord record;
      record.proposal = pending_.at(timer.id).proposal;
      record.Advance(Phase::kAborted).IgnoreError();
      record.abort_reason = std::string(kQuorumFailure);
      record.start_tick = issue_ticks_.at(timer.id);
      record.end_tick = now();
      RecordOutcome(record);
      return;
    }
    case TimerKind::kDeadline:
    case TimerKind::kReduceTimeout: {
      auto heavy = heavies_.find(timer.node);
      if (heavy != heavies_.end()) {
        heavy->second->OnTimer(*this, timer.kind, timer.id);
      }
      return;
    }
  }
}

void Cluster::FireDueTimers() {
  while (!timers_.empty() && timers_.top().at <= now()) {
    Timer timer = timers_.top();
    timers_.pop();
    Fire(timer);
  }
}

void Cluster::Run(Tick max_tick) {
  FireDueTimers();
  while (true) {
    std::optional<Tick> next = network_->NextDeliveryTick();
    if (!timers_.empty()) {
      next = next ? std::min(*next, timers_.top().at) : timers_.top().at;
    }
    if (!next.has_value() || *next > max_tick) return;
    while (now() < *next) {
      for (const transport::Envelope& env : network_->Step()) Dispatch(env);
    }
    FireDueTimers();
  }
}

absl::StatusOr<const reduce::HEKeyPair*> Cluster::HeKey(NodeId holder) {
  if (!heavies_.contains(holder)) {
    return MakeError(ErrorCode::kQuorumMemberUnavailable,
                     StrCat("no key holder ", holder));
  }
  auto it = he_keys_.find(holder);
  if (it == he_keys_.end()) {
    Rng rng(MixSeed(options_.seed, 0x4845'0000'0000'0000ULL + holder));
    PMSR_ASSIGN_OR_RETURN(reduce::HEKeyPair key,
                          reduce::HeKeygen(options_.he_bits, rng));
    it = he_keys_.emplace(holder, std::move(key)).first;
  }
  return &it->second;
}

std::optional<NodeId> Cluster::NodeOfKey(const Bytes& pubkey) const {
  auto it = node_of_key_.find(ToHex(pubkey));
  if (it == node_of_key_.end()) return std::nullopt;
  return it->second;
}

std::string Cluster::IdentityOf(const Bytes& pubkey) const {
  std::optional<NodeId> id = NodeOfKey(pubkey);
  if (!id.has_value()) return {};
  auto it = proposers_.find(*id);
  return it == proposers_.end() ? std::string() : it->second->identity;
}

void Cluster::RecordOutcome(const ComputationRecord& record) {
  const ComputationId& id = record.proposal.id;
  ++outcome_counts_[id];
  outcomes_.emplace(id, record);
  if (record.phase == Phase::kReleased && record.participants > 1) {
    auditor_.InspectValues(id, record.aggregate, "released aggregate");
  }
}

std::vector<std::string> Cluster::CheckInvariants() const {
  std::vector<std::string> out;
  for (const auto& [id, tick] : issue_ticks_) {
    auto count = outcome_counts_.find(id);
    const int n = count == outcome_counts_.end() ? 0 : count->second;
    if (n != 1) {
      out.push_back(StrCat("computation ", id.Hex(), " has ", n, " outcomes"));
    }
  }
  for (const auto& [id, record] : outcomes_) {
    if (!record.terminal()) {
      out.push_back(StrCat("outcome of ", id.Hex(), " is not terminal"));
    }
    auto sends = release_sends_.find(id);
    const int releases = sends == release_sends_.end() ? 0 : sends->second;
    if (record.phase == Phase::kAborted && releases != 0) {
      out.push_back(StrCat("aborted ", id.Hex(), " sent ", releases,
                           " release envelopes"));
    }
    if (releases > 1) {
      out.push_back(StrCat(id.Hex(), " released ", releases, " times"));
    }
    if (!IsMonotoneHistory(record.history)) {
      out.push_back(StrCat("non-monotone outcome history for ", id.Hex()));
    }
  }
  for (const auto& [node, heavy] : heavies_) {
    for (const auto& [id, record] : heavy->Records()) {
      if (!IsMonotoneHistory(record.history)) {
        out.push_back(StrCat("non-monotone history at node ", node, " for ",
                             id.Hex()));
      }
      if (record.phase == Phase::kAborted &&
          heavy->HeldShareCount(id) != 0) {
        out.push_back(StrCat("node ", node, " kept shares of aborted ",
                             id.Hex()));
      }
    }
  }
  for (const std::string& v : auditor_.violations()) out.push_back(v);
  return out;
}

}  // namespace pmsr::runtime
