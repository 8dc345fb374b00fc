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
#ifndef PMSR_RUNTIME_NODES_H_
#define PMSR_RUNTIME_NODES_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "pmsr/common/random.h"
#include "pmsr/mapper/dataset.h"
#include "pmsr/policy/policy.h"
#include "pmsr/proposal/signing.h"
#include "pmsr/reduce/backend.h"
#include "pmsr/reduce/paillier.h"
#include "pmsr/runtime/auditor.h"
#include "pmsr/runtime/record.h"
#include "pmsr/transport/messages.h"

namespace pmsr::runtime {

enum class TimerKind : uint8_t {
  kDeadline,
  kReduceTimeout,
  kIssue,
  kStartGossip,
  kOutcomeCheck,
};

// Services a node may use while handling one event. Implemented by the
// simulation driver.
class NodeContext {
 public:
  virtual ~NodeContext() = default;

  virtual Tick now() const = 0;
  virtual void Send(NodeId from, NodeId to, transport::Payload payload) = 0;
  virtual void SetTimer(NodeId node, Tick at, TimerKind kind,
                        const proposal::ComputationId& id) = 0;
  // Ticks the quorum leader waits after the deadline before declaring a
  // quorum failure.
  virtual Tick reduce_timeout() const = 0;
  // The HE key pair held by `holder`. Light nodes read only the public half.
  virtual absl::StatusOr<const reduce::HEKeyPair*> HeKey(NodeId holder) = 0;
  virtual std::optional<NodeId> NodeOfKey(const Bytes& pubkey) const = 0;
  // Registered identity string for a proposer key; empty if unknown.
  virtual std::string IdentityOf(const Bytes& pubkey) const = 0;
  // Records the single outcome of a computation.
  virtual void RecordOutcome(const ComputationRecord& record) = 0;
  virtual DisclosureAuditor& auditor() = 0;
};

struct LightNodeOptions {
  policy::PrivacyPolicy policy;
  mapper::LocalDataset real_ds;
  std::optional<mapper::LocalDataset> mock_ds;
  // A mock-mode node answers from mock_ds only.
  mapper::Provenance mode = mapper::Provenance::kReal;
  // False models a node that has failed and never responds.
  bool responsive = true;
  // Operator verdict applied when the policy asks for manual approval.
  bool approval_verdict = false;
  uint64_t seed = 0;
};

class LightNode {
 public:
  LightNode(transport::NodeAddress address, proposal::KeyPair keys,
            LightNodeOptions options);

  // Runs the private map and sends one share to each share-holding quorum
  // member. Returns the number of ShareSubmit envelopes sent, which is zero
  // whenever the node declines. Declines are never signalled on the wire.
  size_t OnProposal(NodeContext& ctx,
                    const proposal::SignedProposal& signed_proposal);

  const transport::NodeAddress& address() const { return address_; }
  const policy::BudgetLedger& ledger() const { return ledger_; }
  const std::set<proposal::ComputationId>& seen() const { return seen_; }
  const LightNodeOptions& options() const { return options_; }
  // Node-local reason for the most recent decline of each computation.
  const std::map<proposal::ComputationId, std::string>& declines() const {
    return declines_;
  }

 private:
  absl::StatusOr<size_t> Respond(NodeContext& ctx,
                                 const proposal::SignedProposal& signed_proposal);

  transport::NodeAddress address_;
  proposal::KeyPair keys_;
  LightNodeOptions options_;
  policy::BudgetLedger ledger_;
  Rng rng_;
  std::set<proposal::ComputationId> seen_;
  std::map<proposal::ComputationId, std::string> declines_;
};

class HeavyNode {
 public:
  explicit HeavyNode(transport::NodeAddress address);

  void OnProposal(NodeContext& ctx,
                  const proposal::SignedProposal& signed_proposal);
  // A share that outruns its proposal is held back and replayed once the
  // proposal arrives. PhaseClosed after the deadline, MalformedWire or
  // PartyMismatch for foreign shares, UnknownComputation once the early
  // buffer is full.
  absl::Status OnShare(NodeContext& ctx, NodeId from,
                       const transport::ShareSubmit& submit);
  absl::Status OnPartial(NodeContext& ctx, NodeId from,
                         const transport::ReducePartial& partial);
  void OnRelease(NodeContext& ctx, const transport::AggregateRelease& release);
  void OnAbort(NodeContext& ctx, const transport::Abort& abort);
  void OnTimer(NodeContext& ctx, TimerKind kind,
               const proposal::ComputationId& id);

  const transport::NodeAddress& address() const { return address_; }
  // This node's view of every computation it is a quorum member of.
  std::map<proposal::ComputationId, ComputationRecord> Records() const;
  // Distinct contributors currently held for `id`.
  size_t ParticipantCount(const proposal::ComputationId& id) const;
  // Number of contributor shares still stored for `id`.
  size_t HeldShareCount(const proposal::ComputationId& id) const;

 private:
  struct Collection {
    ComputationRecord record;
    size_t index = 0;
    bool open = true;
    std::map<NodeId, reduce::HeldShare> shares;
    // Leader state.
    std::map<size_t, std::vector<NodeId>> rosters;
    std::map<size_t, reduce::HeldShare> partials;
  };

  bool IsLeader(const Collection& c) const { return c.index == 0; }
  size_t ShareHolders(const Collection& c) const;
  void SendToQuorum(NodeContext& ctx, const Collection& c,
                    const transport::Payload& payload);
  void Notify(NodeContext& ctx, const Collection& c,
              const transport::Payload& payload);
  void Abort(NodeContext& ctx, Collection& c, std::string_view reason);
  void MaybeFinalizeRoster(NodeContext& ctx, Collection& c);
  void FoldAndForward(NodeContext& ctx, Collection& c,
                      const std::vector<NodeId>& roster);
  void MaybeRelease(NodeContext& ctx, Collection& c);

  static constexpr size_t kMaxEarlyShares = 1 << 16;

  transport::NodeAddress address_;
  std::map<proposal::ComputationId, Collection> collections_;
  std::map<proposal::ComputationId,
           std::vector<std::pair<NodeId, transport::ShareSubmit>>>
      early_;
  size_t early_count_ = 0;
};

struct ProposerNode {
  transport::NodeAddress address;
  proposal::KeyPair keys;
  std::string identity;
  std::map<proposal::ComputationId, transport::AggregateRelease> releases;
  std::map<proposal::ComputationId, Tick> release_ticks;
  std::map<proposal::ComputationId, std::string> aborts;
};

}  // namespace pmsr::runtime

#endif  // PMSR_RUNTIME_NODES_H_
