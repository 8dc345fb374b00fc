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
#ifndef PMSR_PROPOSAL_TYPES_H_
#define PMSR_PROPOSAL_TYPES_H_

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "pmsr/common/bytes.h"
#include "pmsr/common/random.h"

namespace pmsr {

// Virtual simulator time.
using Tick = uint64_t;
// Simulator slot of a node.
using NodeId = uint32_t;

}  // namespace pmsr

namespace pmsr::proposal {

struct ComputationId {
  std::array<uint8_t, 16> bytes{};

  static ComputationId Random(Rng& rng);
  static std::optional<ComputationId> FromHex(std::string_view hex);
  std::string Hex() const;

  friend auto operator<=>(const ComputationId&,
                          const ComputationId&) = default;
};

enum class ThreatKind : uint8_t {
  kSemiHonest3PC = 0,
  kShamirThreshold = 1,
  kAdditiveHE = 2,
  kPlaintextDP = 3,
  kTEEStub = 4,
};

inline constexpr int kNumThreatKinds = 5;

std::string_view ThreatKindName(ThreatKind kind);
std::optional<ThreatKind> ParseThreatKind(std::string_view name);

inline constexpr uint8_t ThreatBit(ThreatKind kind) {
  return static_cast<uint8_t>(1u << static_cast<uint8_t>(kind));
}

struct ThreatModel {
  ThreatKind kind = ThreatKind::kSemiHonest3PC;
  // Only meaningful for kShamirThreshold.
  uint32_t threshold = 0;
  uint32_t parties = 0;

  static ThreatModel SemiHonest3PC() { return {ThreatKind::kSemiHonest3PC}; }
  static ThreatModel Shamir(uint32_t t, uint32_t n) {
    return {ThreatKind::kShamirThreshold, t, n};
  }
  static ThreatModel AdditiveHE() { return {ThreatKind::kAdditiveHE}; }
  static ThreatModel PlaintextDP() { return {ThreatKind::kPlaintextDP}; }
  static ThreatModel TEEStub() { return {ThreatKind::kTEEStub}; }

  // Number of Heavy Nodes the backend needs: 3 share holders for 3PC, n for
  // Shamir, an aggregator plus a key holder for HE, one aggregator for
  // plaintext. Zero for the TEE stub.
  size_t QuorumSize() const;

  std::string ToString() const;

  friend bool operator==(const ThreatModel&, const ThreatModel&) = default;
};

enum class FieldKind : uint8_t {
  kFixed64 = 0,
  kCount = 1,
  kFixed64Vector = 2,
  kHistogram = 3,
};

std::string_view FieldKindName(FieldKind kind);
std::optional<FieldKind> ParseFieldKind(std::string_view name);

struct SchemaField {
  std::string name;
  FieldKind kind = FieldKind::kFixed64;
  // Vector length; ignored for other kinds.
  uint32_t length = 0;
  // Histogram bin edges; ignored for other kinds.
  std::vector<double> bin_edges;

  // Number of encoded elements the field occupies.
  size_t Width() const;

  friend bool operator==(const SchemaField&, const SchemaField&) = default;
};

struct OutputSchema {
  std::vector<SchemaField> fields;

  size_t Width() const;
  absl::Status Validate() const;

  friend bool operator==(const OutputSchema&, const OutputSchema&) = default;
};

// Closed registry of map functions executed by Light Nodes.
enum class MapFn : uint8_t {
  kMeanOf = 0,
  kCount = 1,
  kSumOf = 2,
  kHistogramOf = 3,
  kRollingMean = 4,
  kLogprobVector = 5,
};

std::string_view MapFnName(MapFn fn);
std::optional<MapFn> ParseMapFn(std::string_view name);

struct MapFnSpec {
  MapFn fn = MapFn::kCount;
  std::string field;
  std::vector<double> bin_edges;
  uint32_t window = 0;
  uint32_t item_id = 0;
  // Declared value range. Inputs are clamped to it and it fixes the DP
  // sensitivity of the function.
  std::optional<std::pair<double, double>> bounds;

  absl::Status Validate() const;

  friend bool operator==(const MapFnSpec&, const MapFnSpec&) = default;
};

// Closed registry of reduce functions run by the Heavy-Node quorum.
enum class ReduceFn : uint8_t {
  kSum = 0,
  kMean = 1,
  kHistogramMerge = 2,
  kGini = 3,
  kTopDecileShare = 4,
  kGacEnsemble = 5,
  kTheoMax = 6,
};

std::string_view ReduceFnName(ReduceFn fn);
std::optional<ReduceFn> ParseReduceFn(std::string_view name);

// Threat models under which the registry can evaluate `fn`.
uint8_t SupportedCompatibility(ReduceFn fn);

struct ReduceFnSpec {
  ReduceFn fn = ReduceFn::kSum;
  // Per-model weights for kGacEnsemble, in `targets` order.
  std::vector<double> weights;
  // Bitmask of ThreatBit() values.
  uint8_t compatibility = 0;

  bool Supports(ThreatKind kind) const {
    return (compatibility & ThreatBit(kind)) != 0;
  }
  absl::Status Validate() const;

  friend bool operator==(const ReduceFnSpec&, const ReduceFnSpec&) = default;
};

// The only post-processing step available to map_post / reduce_post,
// written "clamp(lo,hi)".
struct Clamp {
  double lo = 0;
  double hi = 0;
  double Apply(double v) const { return v < lo ? lo : (v > hi ? hi : v); }
};

absl::StatusOr<Clamp> ParsePostProcess(std::string_view name);

struct ComputationProposal {
  ComputationId id;
  Tick deadline = 0;
  uint32_t min_participants = 1;
  uint64_t budget = 0;
  // Sorted, unique. Empty means open gossip.
  std::vector<NodeId> targets;
  // Heavy Nodes selected by the proposer, leader first.
  std::vector<NodeId> quorum;
  MapFnSpec map_spec;
  std::optional<std::string> map_post;
  OutputSchema output_schema;
  ReduceFnSpec reduce_spec;
  std::optional<std::string> reduce_post;
  ThreatModel threat_model;
  Bytes proposer;
  std::optional<double> epsilon;

  bool IsTargeted() const { return !targets.empty(); }
  bool Targets(NodeId node) const;
  // Position of `node` in the quorum, if it is a member.
  std::optional<size_t> QuorumIndex(NodeId node) const;

  // Checks every structural invariant. Errors are InvalidProposal and name
  // the offending field.
  absl::Status Validate() const;

  friend bool operator==(const ComputationProposal&,
                         const ComputationProposal&) = default;
};

}  // namespace pmsr::proposal

#endif  // PMSR_PROPOSAL_TYPES_H_
