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
#ifndef PMSR_TRANSPORT_NETWORK_H_
#define PMSR_TRANSPORT_NETWORK_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "pmsr/common/random.h"
#include "pmsr/transport/messages.h"

namespace pmsr::transport {

struct NetworkConfig {
  uint64_t seed = 0;
  Tick latency_min = 1;
  Tick latency_max = 1;
  double drop_rate = 0.0;
  uint32_t fanout = 4;
  uint32_t ttl = 8;

  // ConfigInvalid unless 1 <= latency_min <= latency_max, drop_rate is in
  // [0, 1] and fanout >= 1.
  absl::Status Validate() const;
};

// Deterministic discrete-event network. A single driver owns the instance,
// enqueues with SendDirect / BroadcastGossip and advances time with Step.
class Network {
 public:
  using SendObserver = std::function<void(const Envelope&, bool dropped)>;

  static absl::StatusOr<Network> Create(const NetworkConfig& config);

  // ConfigInvalid if the index is already registered.
  absl::Status AddNode(NodeAddress address);
  bool HasNode(NodeId index) const { return members_.contains(index); }
  const std::map<NodeId, NodeAddress>& members() const { return members_; }
  const NetworkConfig& config() const { return config_; }

  // Enqueues one envelope delivered after a uniform latency in
  // [latency_min, latency_max], or drops it with probability drop_rate.
  // UnknownAddress if either endpoint is not registered.
  absl::Status SendDirect(NodeId from, NodeId to, Payload payload);

  // Marks the proposal seen at `origin` and sends it with ttl = config.ttl
  // to `fanout` distinct peers drawn uniformly from the membership.
  // InvalidSignature if the proposal does not verify.
  absl::Status BroadcastGossip(NodeId origin,
                               const proposal::SignedProposal& signed_proposal);

  // Gossip hook for a delivered proposal. Returns false for an id `self` has
  // already seen. On first sight records the id and, while ttl > 0, forwards
  // to `fanout` random peers with ttl - 1.
  bool OnProposalDelivered(NodeId self, const ProposalMsg& msg);
  bool HasSeen(NodeId node, const proposal::ComputationId& id) const;

  // Advances the clock by one tick and returns every envelope due at the new
  // tick in (deliver_tick, seq) order.
  std::vector<Envelope> Step();

  Tick now() const { return now_; }
  bool idle() const { return queue_.empty(); }
  std::optional<Tick> NextDeliveryTick() const;

  // One `tick,from,to,payload_kind,computation_id` line per delivery.
  const std::string& trace_csv() const { return trace_; }
  // Hex SHA-256 of trace_csv().
  std::string TraceHash() const;

  uint64_t sent() const { return sent_; }
  uint64_t dropped() const { return dropped_; }
  uint64_t delivered() const { return delivered_; }

  // Called for every enqueue attempt, dropped or not.
  void SetSendObserver(SendObserver observer) {
    observer_ = std::move(observer);
  }

 private:
  struct Later {
    bool operator()(const Envelope& a, const Envelope& b) const {
      if (a.deliver_tick != b.deliver_tick) {
        return a.deliver_tick > b.deliver_tick;
      }
      return a.seq > b.seq;
    }
  };

  explicit Network(const NetworkConfig& config)
      : config_(config),
        rng_(config.seed),
        gossip_rng_(MixSeed(config.seed, kGossipStream)) {}

  static constexpr uint64_t kGossipStream = 0x4753'0000'0000'0000ULL;

  std::vector<NodeId> SamplePeers(NodeId self);
  void Forward(NodeId self, const proposal::SignedProposal& signed_proposal,
               uint32_t ttl);

  NetworkConfig config_;
  // Proposal envelopes and peer sampling use gossip_rng_; all other
  // envelopes use rng_.
  Rng rng_;
  Rng gossip_rng_;
  std::map<NodeId, NodeAddress> members_;
  std::vector<NodeId> member_list_;
  std::map<NodeId, std::set<proposal::ComputationId>> seen_;
  std::priority_queue<Envelope, std::vector<Envelope>, Later> queue_;
  Tick now_ = 0;
  uint64_t next_seq_ = 0;
  uint64_t sent_ = 0;
  uint64_t dropped_ = 0;
  uint64_t delivered_ = 0;
  std::string trace_;
  SendObserver observer_;
};

}  // namespace pmsr::transport

#endif  // PMSR_TRANSPORT_NETWORK_H_
