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
#ifndef PMSR_RUNTIME_CLUSTER_H_
#define PMSR_RUNTIME_CLUSTER_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "pmsr/runtime/nodes.h"
#include "pmsr/transport/network.h"

namespace pmsr::runtime {

struct ClusterOptions {
  transport::NetworkConfig network;
  // Ticks after a deadline before the leader gives up on its quorum.
  Tick reduce_timeout = 16;
  // Paillier modulus size for HE key holders.
  int he_bits = 1024;
  uint64_t seed = 0;
};

// Single-threaded driver that owns the network, every node and the timer
// queue. Node ids are assigned in registration order starting at 0.
class Cluster final : public NodeContext {
 public:
  static absl::StatusOr<std::unique_ptr<Cluster>> Create(
      const ClusterOptions& options);

  Cluster(const Cluster&) = delete;
  Cluster& operator=(const Cluster&) = delete;

  absl::StatusOr<NodeId> AddLightNode(proposal::KeyPair keys,
                                      LightNodeOptions options);
  absl::StatusOr<NodeId> AddHeavyNode(proposal::KeyPair keys);
  absl::StatusOr<NodeId> AddProposer(proposal::KeyPair keys,
                                     std::string identity);

  // Issues `signed_proposal` from `proposer` at tick `at`. Targeted
  // proposals go directly to their targets and quorum. Open proposals go
  // directly to the quorum and are gossiped latency_max ticks later.
  absl::Status Schedule(Tick at, NodeId proposer,
                        proposal::SignedProposal signed_proposal);

  // Delivers envelopes and fires timers until both queues are empty or the
  // clock would pass `max_tick`.
  void Run(Tick max_tick);

  // Property checks over everything observed so far: one outcome per issued
  // computation, no release envelope for aborted computations, at most one
  // release per computation, monotone phase histories at every quorum
  // member, and the disclosure auditor's findings.
  std::vector<std::string> CheckInvariants() const;

  const std::map<proposal::ComputationId, ComputationRecord>& outcomes()
      const {
    return outcomes_;
  }
  const std::map<proposal::ComputationId, Tick>& issue_ticks() const {
    return issue_ticks_;
  }
  transport::Network& network() { return *network_; }
  const transport::Network& network() const { return *network_; }
  const std::vector<NodeId>& light_ids() const { return light_ids_; }
  const std::vector<NodeId>& heavy_ids() const { return heavy_ids_; }
  LightNode& light(NodeId id) { return *lights_.at(id); }
  const LightNode& light(NodeId id) const { return *lights_.at(id); }
  HeavyNode& heavy(NodeId id) { return *heavies_.at(id); }
  const HeavyNode& heavy(NodeId id) const { return *heavies_.at(id); }
  const ProposerNode& proposer(NodeId id) const { return *proposers_.at(id); }
  std::vector<NodeId> proposer_ids() const {
    std::vector<NodeId> ids;
    for (const auto& [id, node] : proposers_) ids.push_back(id);
    return ids;
  }
  const DisclosureAuditor& disclosure_auditor() const { return auditor_; }

  // ShareSubmit envelopes each node has put on the wire.
  const std::map<NodeId, uint64_t>& share_sends() const {
    return share_sends_;
  }
  // Handler errors, keyed by error name, for diagnostics.
  const std::map<std::string, uint64_t>& handler_errors() const {
    return handler_errors_;
  }

  // NodeContext.
  Tick now() const override { return network_->now(); }
  void Send(NodeId from, NodeId to, transport::Payload payload) override;
  void SetTimer(NodeId node, Tick at, TimerKind kind,
                const proposal::ComputationId& id) override;
  Tick reduce_timeout() const override { return options_.reduce_timeout; }
  absl::StatusOr<const reduce::HEKeyPair*> HeKey(NodeId holder) override;
  std::optional<NodeId> NodeOfKey(const Bytes& pubkey) const override;
  std::string IdentityOf(const Bytes& pubkey) const override;
  void RecordOutcome(const ComputationRecord& record) override;
  DisclosureAuditor& auditor() override { return auditor_; }

 private:
  struct Timer {
    Tick at = 0;
    uint64_t seq = 0;
    NodeId node = 0;
    TimerKind kind = TimerKind::kDeadline;
    proposal::ComputationId id;
  };
  struct TimerLater {
    bool operator()(const Timer& a, const Timer& b) const {
      if (a.at != b.at) return a.at > b.at;
      return a.seq > b.seq;
    }
  };

  Cluster(const ClusterOptions& options, transport::Network network);

  absl::StatusOr<NodeId> Register(const proposal::KeyPair& keys);
  void Dispatch(const transport::Envelope& envelope);
  void FireDueTimers();
  void Fire(const Timer& timer);
  void Issue(NodeId proposer, const proposal::ComputationId& id);
  void Observe(const transport::Envelope& envelope, bool dropped);
  void CountError(const absl::Status& status);

  ClusterOptions options_;
  std::unique_ptr<transport::Network> network_;
  DisclosureAuditor auditor_;
  NodeId next_id_ = 0;
  std::vector<NodeId> light_ids_;
  std::vector<NodeId> heavy_ids_;
  std::map<NodeId, std::unique_ptr<LightNode>> lights_;
  std::map<NodeId, std::unique_ptr<HeavyNode>> heavies_;
  std::map<NodeId, std::unique_ptr<ProposerNode>> proposers_;
  std::map<std::string, NodeId> node_of_key_;
  std::map<NodeId, reduce::HEKeyPair> he_keys_;

  std::priority_queue<Timer, std::vector<Timer>, TimerLater> timers_;
  uint64_t next_timer_seq_ = 0;
  std::map<proposal::ComputationId, proposal::SignedProposal> pending_;
  std::map<proposal::ComputationId, Tick> issue_ticks_;

  std::map<proposal::ComputationId, ComputationRecord> outcomes_;
  std::map<proposal::ComputationId, int> outcome_counts_;
  std::map<proposal::ComputationId, int> release_sends_;
  std::map<NodeId, uint64_t> share_sends_;
  std::map<std::string, uint64_t> handler_errors_;
};

}  // namespace pmsr::runtime

#endif  // PMSR_RUNTIME_CLUSTER_H_
