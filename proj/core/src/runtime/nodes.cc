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
#include "pmsr/runtime/nodes.h"

#include <algorithm>
#include <iterator>
#include <limits>

#include "pmsr/common/status.h"
#include "pmsr/common/strings.h"
#include "pmsr/mapper/fixed_point.h"
#include "pmsr/mapper/map_functions.h"
#include "pmsr/reduce/functions.h"

namespace pmsr::runtime {
namespace {

using proposal::ComputationId;
using proposal::ThreatKind;

double LedgerTotal(const policy::PrivacyPolicy& policy) {
  return policy.BudgetTotal().value_or(
      std::numeric_limits<double>::infinity());
}

absl::Status Decline(std::string_view why) {
  return absl::FailedPreconditionError(std::string(why));
}

}  // namespace

LightNode::LightNode(transport::NodeAddress address, proposal::KeyPair keys,
                     LightNodeOptions options)
    : address_(std::move(address)),
      keys_(std::move(keys)),
      options_(std::move(options)),
      ledger_(LedgerTotal(options_.policy)),
      rng_(options_.seed) {}

size_t LightNode::OnProposal(NodeContext& ctx,
                             const proposal::SignedProposal& signed_proposal) {
  const ComputationId& id = signed_proposal.proposal.id;
  if (!seen_.insert(id).second) return 0;
  absl::StatusOr<size_t> sent = Respond(ctx, signed_proposal);
  if (!sent.ok()) {
    declines_[id] = std::string(sent.status().message());
    return 0;
  }
  return *sent;
}

absl::StatusOr<size_t> LightNode::Respond(
    NodeContext& ctx, const proposal::SignedProposal& signed_proposal) {
  if (!options_.responsive) return Decline("offline");
  if (!proposal::VerifyProposal(signed_proposal)) {
    return MakeError(ErrorCode::kInvalidSignature);
  }
  const proposal::ComputationProposal& p = signed_proposal.proposal;
  const NodeId self = address_.index;
  if (ctx.now() >= p.deadline) return Decline("deadline passed");
  if (p.IsTargeted() && !p.Targets(self)) return Decline("not targeted");
  if (p.threat_model.kind == ThreatKind::kTEEStub) {
    return MakeError(ErrorCode::kNotImplemented, "TEE backend");
  }

  policy::Decision decision = policy::Evaluate(options_.policy, p, ledger_,
                                               ctx.IdentityOf(p.proposer));
  if (decision.kind == policy::Decision::Kind::kNeedsApproval) {
    policy::ApprovalTicket ticket(decision);
    PMSR_ASSIGN_OR_RETURN(decision, ticket.Approve(options_.approval_verdict));
  }
  if (decision.kind != policy::Decision::Kind::kAccept) {
    return Decline(decision.ToString());
  }
  if (p.epsilon.has_value()) PMSR_RETURN_IF_ERROR(Charge(ledger_, *p.epsilon));

  const mapper::LocalDataset* ds = &options_.real_ds;
  if (options_.mode == mapper::Provenance::kMock) {
    if (!options_.mock_ds.has_value()) return Decline("no mock dataset");
    ds = &*options_.mock_ds;
  }
  PMSR_ASSIGN_OR_RETURN(mapper::PrivateMapResult result,
                        mapper::RunPrivateMap(*ds, p, rng_));

  std::vector<uint64_t> raw_encoded;
  for (double v : result.raw) {
    PMSR_ASSIGN_OR_RETURN(mapper::FixedPoint fp, mapper::EncodeFixed(v));
    raw_encoded.push_back(fp.raw);
  }
  ctx.auditor().RecordRaw(p.id, p.threat_model.kind, self,
                          std::move(raw_encoded));

  std::vector<int64_t> values;
  for (const mapper::FixedPoint& fp : result.output.Flatten()) {
    values.push_back(fp.as_signed());
  }
  const reduce::HEPublicKey* he_pub = nullptr;
  if (p.threat_model.kind == ThreatKind::kAdditiveHE) {
    PMSR_ASSIGN_OR_RETURN(const reduce::HEKeyPair* key,
                          ctx.HeKey(p.quorum[1]));
    he_pub = &key->pub;
  }
  PMSR_ASSIGN_OR_RETURN(
      std::vector<reduce::HeldShare> shares,
      reduce::ShareContribution(p.threat_model, values, he_pub, rng_));
  for (size_t i = 0; i < shares.size(); ++i) {
    ctx.Send(self, p.quorum[i],
             transport::ShareSubmit{p.id, self,
                                    reduce::EncodeShareWire(p.id, shares[i])});
  }
  return shares.size();
}

HeavyNode::HeavyNode(transport::NodeAddress address)
    : address_(std::move(address)) {}

size_t HeavyNode::ShareHolders(const Collection& c) const {
  return reduce::ShareHolderCount(c.record.proposal.threat_model);
}

void HeavyNode::OnProposal(NodeContext& ctx,
                           const proposal::SignedProposal& signed_proposal) {
  const proposal::ComputationProposal& p = signed_proposal.proposal;
  const NodeId self = address_.index;
  std::optional<size_t> index = p.QuorumIndex(self);
  if (!index.has_value() || collections_.contains(p.id)) return;
  if (p.threat_model.kind == ThreatKind::kTEEStub ||
      ctx.now() >= p.deadline || !proposal::VerifyProposal(signed_proposal)) {
    if (auto early = early_.find(p.id); early != early_.end()) {
      early_count_ -= early->second.size();
      early_.erase(early);
    }
    return;
  }

  Collection c;
  c.record.proposal = p;
  c.record.start_tick = ctx.now();
  c.index = *index;
  c.record.Advance(Phase::kCollecting).IgnoreError();
  collections_.emplace(p.id, std::move(c));
  ctx.SetTimer(self, p.deadline, TimerKind::kDeadline, p.id);
  if (*index == 0) {
    ctx.SetTimer(self, p.deadline + ctx.reduce_timeout(),
                 TimerKind::kReduceTimeout, p.id);
  }
  auto early = early_.find(p.id);
  if (early == early_.end()) return;
  std::vector<std::pair<NodeId, transport::ShareSubmit>> held =
      std::move(early->second);
  early_.erase(early);
  early_count_ -= held.size();
  for (const auto& [from, submit] : held) {
    OnShare(ctx, from, submit).IgnoreError();
  }
}

absl::Status HeavyNode::OnShare(NodeContext& ctx, NodeId from,
                                const transport::ShareSubmit& submit) {
  auto it = collections_.find(submit.id);
  if (it == collections_.end()) {
    if (early_count_ >= kMaxEarlyShares) {
      return MakeError(ErrorCode::kUnknownComputation, submit.id.Hex());
    }
    early_[submit.id].emplace_back(from, submit);
    ++early_count_;
    return absl::OkStatus();
  }
  Collection& c = it->second;
  const proposal::ComputationProposal& p = c.record.proposal;
  if (!c.open || c.record.phase != Phase::kCollecting) {
    return MakeError(ErrorCode::kPhaseClosed, submit.id.Hex());
  }
  if (c.index >= ShareHolders(c)) {
    return MakeError(ErrorCode::kPartyMismatch, "not a share holder");
  }
  if (submit.contributor != from) {
    return MakeError(ErrorCode::kMalformedWire, "contributor mismatch");
  }
  if (p.IsTargeted() && !p.Targets(from)) {
    return MakeError(ErrorCode::kUnknownAddress, "contributor not targeted");
  }
  PMSR_ASSIGN_OR_RETURN(auto decoded,
                        reduce::DecodeShareWire(p.threat_model.kind,
                                                submit.wire));
  if (decoded.first != submit.id) {
    return MakeError(ErrorCode::kMalformedWire, "computation id mismatch");
  }
  const bool split = p.threat_model.kind == ThreatKind::kSemiHonest3PC ||
                     p.threat_model.kind == ThreatKind::kShamirThreshold;
  const uint8_t expected_party = split ? static_cast<uint8_t>(c.index + 1) : 0;
  if (decoded.second.party != expected_party) {
    return MakeError(ErrorCode::kPartyMismatch,
                     StrCat(int{decoded.second.party}, " vs ",
                            int{expected_party}));
  }
  if (decoded.second.size() != p.output_schema.Width()) {
    return MakeError(ErrorCode::kDimensionMismatch, "share width");
  }
  c.shares[from] = std::move(decoded.second);
  c.record.participants = static_cast<uint32_t>(c.shares.size());
  (void)ctx;
  return absl::OkStatus();
}

void HeavyNode::Notify(NodeContext& ctx, const Collection& c,
                       const transport::Payload& payload) {
  const proposal::ComputationProposal& p = c.record.proposal;
  const NodeId self = address_.index;
  for (NodeId member : p.quorum) {
    if (member != self) ctx.Send(self, member, payload);
  }
  if (std::optional<NodeId> proposer = ctx.NodeOfKey(p.proposer)) {
    ctx.Send(self, *proposer, payload);
  }
}

void HeavyNode::Abort(NodeContext& ctx, Collection& c,
                      std::string_view reason) {
  if (c.record.terminal()) return;
  c.record.Advance(Phase::kAborted).IgnoreError();
  c.record.abort_reason = std::string(reason);
  c.record.end_tick = ctx.now();
  c.open = false;
  c.shares.clear();
  c.partials.clear();
  c.rosters.clear();
  if (IsLeader(c)) {
    ctx.RecordOutcome(c.record);
    Notify(ctx, c,
           transport::Abort{c.record.proposal.id, std::string(reason)});
  }
}

void HeavyNode::OnTimer(NodeContext& ctx, TimerKind kind,
                        const ComputationId& id) {
  auto it = collections_.find(id);
  if (it == collections_.end()) return;
  Collection& c = it->second;
  if (kind == TimerKind::kReduceTimeout) {
    if (IsLeader(c)) Abort(ctx, c, kQuorumFailure);
    return;
  }
  if (kind != TimerKind::kDeadline || !c.open) return;
  c.open = false;
  if (c.record.phase != Phase::kCollecting || c.index >= ShareHolders(c)) {
    return;
  }
  std::vector<NodeId> roster;
  for (const auto& [contributor, share] : c.shares) {
    roster.push_back(contributor);
  }
  if (IsLeader(c)) {
    c.rosters.emplace(0, std::move(roster));
    MaybeFinalizeRoster(ctx, c);
  } else {
    ctx.Send(address_.index, c.record.proposal.quorum[0],
             transport::ReducePartial{id, transport::PartialStage::kRoster,
                                      std::move(roster), {}});
  }
}

void HeavyNode::MaybeFinalizeRoster(NodeContext& ctx, Collection& c) {
  if (c.record.phase != Phase::kCollecting) return;
  if (c.rosters.size() < ShareHolders(c)) return;
  std::vector<NodeId> agreed = c.rosters.begin()->second;
  for (const auto& [member, roster] : c.rosters) {
    std::vector<NodeId> next;
    std::set_intersection(agreed.begin(), agreed.end(), roster.begin(),
                          roster.end(), std::back_inserter(next));
    agreed = std::move(next);
  }
  c.record.participants = static_cast<uint32_t>(agreed.size());
  c.record.contributors = agreed;
  if (agreed.size() < c.record.proposal.min_participants) {
    Abort(ctx, c, kInsufficientParticipants);
    return;
  }
  const proposal::ComputationProposal& p = c.record.proposal;
  for (size_t k = 1; k < ShareHolders(c); ++k) {
    ctx.Send(address_.index, p.quorum[k],
             transport::ReducePartial{p.id,
                                      transport::PartialStage::kFinalRoster,
                                      agreed,
                                      {}});
  }
  FoldAndForward(ctx, c, agreed);
}

void HeavyNode::FoldAndForward(NodeContext& ctx, Collection& c,
                               const std::vector<NodeId>& roster) {
  const proposal::ComputationProposal& p = c.record.proposal;
  const NodeId self = address_.index;
  if (c.record.phase == Phase::kCollecting) {
    c.record.Advance(Phase::kReducing).IgnoreError();
  }
  const bool gac = p.reduce_spec.fn == proposal::ReduceFn::kGacEnsemble;
  std::vector<reduce::HeldShare> contributions;
  std::vector<int64_t> weights;
  for (NodeId contributor : roster) {
    auto share = c.shares.find(contributor);
    if (share == c.shares.end()) return;
    contributions.push_back(share->second);
    int64_t weight = 1;
    if (gac) {
      auto pos = std::lower_bound(p.targets.begin(), p.targets.end(),
                                  contributor);
      if (pos == p.targets.end() || *pos != contributor) return;
      auto quantized = reduce::QuantizeWeight(
          p.reduce_spec.weights[static_cast<size_t>(pos - p.targets.begin())]);
      if (!quantized.ok()) return;
      weight = *quantized;
    }
    weights.push_back(weight);
  }
  const reduce::HEPublicKey* he_pub = nullptr;
  if (p.threat_model.kind == ThreatKind::kAdditiveHE) {
    auto key = ctx.HeKey(p.quorum[1]);
    if (!key.ok()) return;
    he_pub = &(*key)->pub;
  }
  absl::StatusOr<reduce::HeldShare> folded =
      reduce::FoldShares(p.threat_model, contributions, weights, he_pub);
  c.shares.clear();
  if (!folded.ok()) {
    if (IsLeader(c)) Abort(ctx, c, kQuorumFailure);
    return;
  }
  Bytes wire = reduce::EncodeShareWire(p.id, *folded);
  if (p.threat_model.kind == ThreatKind::kAdditiveHE) {
    ctx.Send(self, p.quorum[1],
             transport::ReducePartial{p.id, transport::PartialStage::kDecrypt,
                                      roster, std::move(wire)});
  } else if (IsLeader(c)) {
    c.partials.emplace(0, std::move(*folded));
    MaybeRelease(ctx, c);
  } else {
    ctx.Send(self, p.quorum[0],
             transport::ReducePartial{p.id, transport::PartialStage::kFolded,
                                      {}, std::move(wire)});
  }
}

absl::Status HeavyNode::OnPartial(NodeContext& ctx, NodeId from,
                                  const transport::ReducePartial& partial) {
  auto it = collections_.find(partial.id);
  if (it == collections_.end()) {
    return MakeError(ErrorCode::kUnknownComputation, partial.id.Hex());
  }
  Collection& c = it->second;
  const proposal::ComputationProposal& p = c.record.proposal;
  std::optional<size_t> sender = p.QuorumIndex(from);
  if (!sender.has_value()) {
    return MakeError(ErrorCode::kPartyMismatch, "sender outside quorum");
  }
  const ThreatKind kind = p.threat_model.kind;
  switch (partial.stage) {
    case transport::PartialStage::kRoster: {
      if (!IsLeader(c) || *sender >= ShareHolders(c)) {
        return MakeError(ErrorCode::kPartyMismatch, "roster");
      }
      if (c.record.phase != Phase::kCollecting) {
        return MakeError(ErrorCode::kPhaseClosed, "roster");
      }
      std::vector<NodeId> roster = partial.contributors;
      std::sort(roster.begin(), roster.end());
      c.rosters.emplace(*sender, std::move(roster));
      MaybeFinalizeRoster(ctx, c);
      return absl::OkStatus();
    }
    case transport::PartialStage::kFinalRoster: {
      if (*sender != 0) {
        return MakeError(ErrorCode::kPartyMismatch, "final roster");
      }
      if (c.record.phase != Phase::kCollecting) {
        return MakeError(ErrorCode::kPhaseClosed, "final roster");
      }
      c.open = false;
      c.record.participants = static_cast<uint32_t>(partial.contributors.size());
      c.record.contributors = partial.contributors;
      FoldAndForward(ctx, c, partial.contributors);
      return absl::OkStatus();
    }
    case transport::PartialStage::kDecrypt: {
      if (kind != ThreatKind::kAdditiveHE || c.index != 1 || *sender != 0) {
        return MakeError(ErrorCode::kPartyMismatch, "decrypt request");
      }
      if (c.record.phase != Phase::kCollecting) {
        return MakeError(ErrorCode::kPhaseClosed, "decrypt request");
      }
      if (partial.contributors.size() < p.min_participants) {
        return MakeError(ErrorCode::kInsufficientShares,
                         StrCat(partial.contributors.size(), " contributors"));
      }
      PMSR_ASSIGN_OR_RETURN(auto decoded,
                            reduce::DecodeShareWire(kind, partial.wire));
      PMSR_ASSIGN_OR_RETURN(const reduce::HEKeyPair* key,
                            ctx.HeKey(address_.index));
      PMSR_ASSIGN_OR_RETURN(reduce::HeldShare plain,
                            reduce::DecryptPartial(*key, decoded.second));
      c.open = false;
      c.record.participants = static_cast<uint32_t>(partial.contributors.size());
      c.record.contributors = partial.contributors;
      c.record.Advance(Phase::kReducing).IgnoreError();
      ctx.Send(address_.index, p.quorum[0],
               transport::ReducePartial{p.id, transport::PartialStage::kFolded,
                                        {},
                                        reduce::EncodeShareWire(p.id, plain)});
      return absl::OkStatus();
    }
    case transport::PartialStage::kFolded: {
      if (!IsLeader(c) || *sender == 0) {
        return MakeError(ErrorCode::kPartyMismatch, "folded partial");
      }
      if (c.record.phase != Phase::kReducing) {
        return MakeError(ErrorCode::kPhaseClosed, "folded partial");
      }
      const ThreatKind wire_kind =
          kind == ThreatKind::kAdditiveHE ? ThreatKind::kPlaintextDP : kind;
      PMSR_ASSIGN_OR_RETURN(auto decoded,
                            reduce::DecodeShareWire(wire_kind, partial.wire));
      c.partials.emplace(*sender, std::move(decoded.second));
      MaybeRelease(ctx, c);
      return absl::OkStatus();
    }
  }
  return absl::OkStatus();
}

void HeavyNode::MaybeRelease(NodeContext& ctx, Collection& c) {
  if (c.record.phase != Phase::kReducing) return;
  const proposal::ComputationProposal& p = c.record.proposal;
  const proposal::ThreatModel& model = p.threat_model;
  size_t needed = 1;
  if (model.kind == ThreatKind::kSemiHonest3PC) needed = 3;
  if (model.kind == ThreatKind::kShamirThreshold) needed = model.threshold;
  if (model.kind == ThreatKind::kAdditiveHE && !c.partials.contains(1)) return;
  if (c.partials.size() < needed) return;

  std::vector<reduce::HeldShare> parts;
  for (const auto& [index, share] : c.partials) {
    if (parts.size() == needed) break;
    parts.push_back(share);
  }
  absl::StatusOr<std::vector<int64_t>> scaled =
      reduce::ReconstructAggregate(model, parts);
  if (!scaled.ok()) {
    Abort(ctx, c, kQuorumFailure);
    return;
  }
  reduce::Aggregate aggregate;
  aggregate.scaled = std::move(*scaled);
  aggregate.participants = c.record.participants;
  if (p.reduce_spec.fn == proposal::ReduceFn::kGacEnsemble) {
    aggregate.scale *= static_cast<double>(reduce::kGacWeightScale);
  }
  absl::StatusOr<std::vector<double>> values =
      reduce::ApplyReduceFunction(p.reduce_spec, p.reduce_post, aggregate);
  c.partials.clear();
  if (!values.ok()) {
    Abort(ctx, c, StrCat("ReduceError(", ErrorCodeName(
                                             ErrorCodeOf(values.status())
                                                 .value_or(ErrorCode::kEmpty)),
                         ")"));
    return;
  }
  c.record.aggregate = *values;
  c.record.Advance(Phase::kReleased).IgnoreError();
  c.record.end_tick = ctx.now();
  ctx.RecordOutcome(c.record);
  Notify(ctx, c,
         transport::AggregateRelease{p.id, std::move(*values),
                                     c.record.participants});
}

void HeavyNode::OnRelease(NodeContext& ctx,
                          const transport::AggregateRelease& release) {
  auto it = collections_.find(release.id);
  if (it == collections_.end()) return;
  Collection& c = it->second;
  if (IsLeader(c) || c.record.phase != Phase::kReducing) return;
  c.record.aggregate = release.values;
  c.record.Advance(Phase::kReleased).IgnoreError();
  c.record.end_tick = ctx.now();
}

void HeavyNode::OnAbort(NodeContext& ctx, const transport::Abort& abort) {
  auto it = collections_.find(abort.id);
  if (it == collections_.end() || IsLeader(it->second)) return;
  Abort(ctx, it->second, abort.reason);
}

std::map<ComputationId, ComputationRecord> HeavyNode::Records() const {
  std::map<ComputationId, ComputationRecord> out;
  for (const auto& [id, c] : collections_) out.emplace(id, c.record);
  return out;
}

size_t HeavyNode::ParticipantCount(const ComputationId& id) const {
  auto it = collections_.find(id);
  return it == collections_.end() ? 0 : it->second.record.participants;
}

size_t HeavyNode::HeldShareCount(const ComputationId& id) const {
  auto it = collections_.find(id);
  if (it == collections_.end()) {
    auto early = early_.find(id);
    return early == early_.end() ? 0 : early->second.size();
  }
  return it->second.shares.size();
}

}  // namespace pmsr::runtime
