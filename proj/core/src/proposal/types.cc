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
#include "pmsr/proposal/types.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <set>
#include <string>

#include "pmsr/common/strings.h"
#include "pmsr/common/status.h"

namespace pmsr::proposal {
namespace {

absl::Status Invalid(std::string_view field, std::string_view why) {
  return MakeError(ErrorCode::kInvalidProposal, StrCat(field, ": ", why));
}

bool StrictlyIncreasing(const std::vector<double>& v) {
  for (size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) return false;
    if (i > 0 && !(v[i - 1] < v[i])) return false;
  }
  return true;
}

constexpr std::array<std::string_view, kNumThreatKinds> kThreatNames = {
    "semi_honest_3pc", "shamir", "additive_he", "plaintext_dp", "tee_stub"};

constexpr std::array<std::string_view, 4> kFieldKindNames = {
    "fixed64", "count", "fixed64_vector", "histogram"};

constexpr std::array<std::string_view, 6> kMapFnNames = {
    "mean_of", "count", "sum_of", "histogram_of", "rolling_mean",
    "logprob_vector"};

constexpr std::array<std::string_view, 7> kReduceFnNames = {
    "sum", "mean", "histogram_merge", "gini", "top_decile_share",
    "gac_ensemble", "theo_max"};

template <typename Enum, size_t N>
std::optional<Enum> FindName(const std::array<std::string_view, N>& names,
                             std::string_view name) {
  for (size_t i = 0; i < N; ++i) {
    if (names[i] == name) return static_cast<Enum>(i);
  }
  return std::nullopt;
}

std::optional<double> ParseDouble(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (s.empty()) return std::nullopt;
  double value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

}  // namespace

ComputationId ComputationId::Random(Rng& rng) {
  ComputationId id;
  for (size_t i = 0; i < id.bytes.size(); i += 8) {
    uint64_t word = rng.NextU64();
    for (size_t j = 0; j < 8; ++j) {
      id.bytes[i + j] = static_cast<uint8_t>(word >> (56 - 8 * j));
    }
  }
  return id;
}

std::optional<ComputationId> ComputationId::FromHex(std::string_view hex) {
  auto bytes = pmsr::FromHex(hex);
  if (!bytes || bytes->size() != 16) return std::nullopt;
  ComputationId id;
  std::copy(bytes->begin(), bytes->end(), id.bytes.begin());
  return id;
}

std::string ComputationId::Hex() const { return ToHex(bytes); }

std::string_view ThreatKindName(ThreatKind kind) {
  return kThreatNames[static_cast<size_t>(kind)];
}

std::optional<ThreatKind> ParseThreatKind(std::string_view name) {
  return FindName<ThreatKind>(kThreatNames, name);
}

size_t ThreatModel::QuorumSize() const {
  switch (kind) {
    case ThreatKind::kSemiHonest3PC:
      return 3;
    case ThreatKind::kShamirThreshold:
      return parties;
    case ThreatKind::kAdditiveHE:
      return 2;
    case ThreatKind::kPlaintextDP:
      return 1;
    case ThreatKind::kTEEStub:
      return 0;
  }
  return 0;
}

std::string ThreatModel::ToString() const {
  if (kind == ThreatKind::kShamirThreshold) {
    return StrCat("shamir(", threshold, ",", parties, ")");
  }
  return std::string(ThreatKindName(kind));
}

std::string_view FieldKindName(FieldKind kind) {
  return kFieldKindNames[static_cast<size_t>(kind)];
}

std::optional<FieldKind> ParseFieldKind(std::string_view name) {
  return FindName<FieldKind>(kFieldKindNames, name);
}

size_t SchemaField::Width() const {
  switch (kind) {
    case FieldKind::kFixed64:
    case FieldKind::kCount:
      return 1;
    case FieldKind::kFixed64Vector:
      return length;
    case FieldKind::kHistogram:
      return bin_edges.empty() ? 0 : bin_edges.size() - 1;
  }
  return 0;
}

size_t OutputSchema::Width() const {
  size_t total = 0;
  for (const SchemaField& f : fields) total += f.Width();
  return total;
}

absl::Status OutputSchema::Validate() const {
  if (fields.empty()) return Invalid("output_schema", "no fields");
  std::set<std::string> names;
  for (const SchemaField& f : fields) {
    if (f.name.empty()) return Invalid("output_schema", "empty field name");
    if (!names.insert(f.name).second) {
      return Invalid("output_schema", StrCat("duplicate field ", f.name));
    }
    if (f.kind == FieldKind::kFixed64Vector && f.length < 1) {
      return Invalid("output_schema",
                     StrCat(f.name, " vector length must be >= 1"));
    }
    if (f.kind == FieldKind::kHistogram &&
        (f.bin_edges.size() < 2 || !StrictlyIncreasing(f.bin_edges))) {
      return Invalid("output_schema",
                     StrCat(f.name, " bin edges must strictly increase"));
    }
  }
  return absl::OkStatus();
}

std::string_view MapFnName(MapFn fn) {
  return kMapFnNames[static_cast<size_t>(fn)];
}

std::optional<MapFn> ParseMapFn(std::string_view name) {
  return FindName<MapFn>(kMapFnNames, name);
}

absl::Status MapFnSpec::Validate() const {
  const bool needs_field = fn != MapFn::kCount && fn != MapFn::kLogprobVector;
  if (needs_field && field.empty()) {
    return Invalid("map_spec", StrCat(MapFnName(fn), " needs a field"));
  }
  if (fn == MapFn::kHistogramOf &&
      (bin_edges.size() < 2 || !StrictlyIncreasing(bin_edges))) {
    return Invalid("map_spec", "histogram bin edges must strictly increase");
  }
  if (fn == MapFn::kRollingMean && window < 1) {
    return Invalid("map_spec", "rolling_mean window must be >= 1");
  }
  if (bounds.has_value()) {
    auto [lo, hi] = *bounds;
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
      return Invalid("map_spec", "bounds must satisfy lo < hi");
    }
  }
  return absl::OkStatus();
}

std::string_view ReduceFnName(ReduceFn fn) {
  return kReduceFnNames[static_cast<size_t>(fn)];
}

std::optional<ReduceFn> ParseReduceFn(std::string_view name) {
  return FindName<ReduceFn>(kReduceFnNames, name);
}

uint8_t SupportedCompatibility(ReduceFn) {
  return ThreatBit(ThreatKind::kSemiHonest3PC) |
         ThreatBit(ThreatKind::kShamirThreshold) |
         ThreatBit(ThreatKind::kAdditiveHE) |
         ThreatBit(ThreatKind::kPlaintextDP);
}

absl::Status ReduceFnSpec::Validate() const {
  if (fn == ReduceFn::kGacEnsemble) {
    if (weights.empty()) return Invalid("reduce_spec", "gac weights missing");
    for (double w : weights) {
      if (!std::isfinite(w) || !(w > 0)) {
        return Invalid("reduce_spec", "gac weights must be positive");
      }
    }
  } else if (!weights.empty()) {
    return Invalid("reduce_spec", "weights only apply to gac_ensemble");
  }
  if (compatibility == 0) {
    return Invalid("reduce_spec", "empty compatibility set");
  }
  if ((compatibility & ~SupportedCompatibility(fn)) != 0) {
    return Invalid("reduce_spec",
                   StrCat(ReduceFnName(fn),
                                " cannot run under a declared threat model"));
  }
  return absl::OkStatus();
}

absl::StatusOr<Clamp> ParsePostProcess(std::string_view name) {
  constexpr std::string_view kPrefix = "clamp(";
  if (name.substr(0, kPrefix.size()) != kPrefix || name.back() != ')') {
    return MakeError(ErrorCode::kInvalidProposal,
                     StrCat("unknown post-processing ", name));
  }
  std::string_view args =
      name.substr(kPrefix.size(), name.size() - kPrefix.size() - 1);
  size_t comma = args.find(',');
  if (comma == std::string_view::npos) {
    return MakeError(ErrorCode::kInvalidProposal,
                     StrCat("malformed clamp ", name));
  }
  auto lo = ParseDouble(args.substr(0, comma));
  auto hi = ParseDouble(args.substr(comma + 1));
  if (!lo || !hi || std::isnan(*lo) || std::isnan(*hi) || !(*lo <= *hi)) {
    return MakeError(ErrorCode::kInvalidProposal,
                     StrCat("malformed clamp ", name));
  }
  return Clamp{*lo, *hi};
}

bool ComputationProposal::Targets(NodeId node) const {
  return std::binary_search(targets.begin(), targets.end(), node);
}

std::optional<size_t> ComputationProposal::QuorumIndex(NodeId node) const {
  auto it = std::find(quorum.begin(), quorum.end(), node);
  if (it == quorum.end()) return std::nullopt;
  return static_cast<size_t>(it - quorum.begin());
}

absl::Status ComputationProposal::Validate() const {
  if (deadline == 0) return Invalid("deadline", "must be positive");
  if (min_participants < 1) return Invalid("min_participants", "must be >= 1");
  for (size_t i = 1; i < targets.size(); ++i) {
    if (!(targets[i - 1] < targets[i])) {
      return Invalid("targets", "must be sorted and unique");
    }
  }
  {
    std::set<NodeId> seen(quorum.begin(), quorum.end());
    if (seen.size() != quorum.size()) {
      return Invalid("quorum", "duplicate member");
    }
  }
  PMSR_RETURN_IF_ERROR(map_spec.Validate());
  if (map_post.has_value()) {
    auto clamp = ParsePostProcess(*map_post);
    if (!clamp.ok()) return Invalid("map_post", std::string(clamp.status().message()));
  }
  PMSR_RETURN_IF_ERROR(output_schema.Validate());
  PMSR_RETURN_IF_ERROR(reduce_spec.Validate());
  if (reduce_post.has_value()) {
    auto clamp = ParsePostProcess(*reduce_post);
    if (!clamp.ok()) return Invalid("reduce_post", std::string(clamp.status().message()));
  }
  if (threat_model.kind == ThreatKind::kShamirThreshold) {
    if (threat_model.threshold < 2 ||
        threat_model.threshold > threat_model.parties) {
      return Invalid("threat_model", "shamir requires 2 <= t <= n");
    }
    if (threat_model.parties > 255) {
      return Invalid("threat_model", "shamir supports at most 255 parties");
    }
  } else if (threat_model.threshold != 0 || threat_model.parties != 0) {
    return Invalid("threat_model", "threshold parameters only apply to shamir");
  }
  if (!reduce_spec.Supports(threat_model.kind)) {
    return Invalid("threat_model",
                   StrCat(ThreatKindName(threat_model.kind),
                                " not in reduce_spec compatibility"));
  }
  if (threat_model.kind != ThreatKind::kTEEStub &&
      quorum.size() != threat_model.QuorumSize()) {
    return Invalid("quorum", StrCat("expected ",
                                          threat_model.QuorumSize(),
                                          " members for ",
                                          threat_model.ToString()));
  }
  if (reduce_spec.fn == ReduceFn::kGacEnsemble &&
      reduce_spec.weights.size() != targets.size()) {
    return Invalid("reduce_spec", "gac needs one weight per target");
  }
  if (proposer.size() != 32) {
    return Invalid("proposer", "expected a 32-byte public key");
  }
  if (epsilon.has_value() && (!std::isfinite(*epsilon) || *epsilon < 0)) {
    return Invalid("epsilon", "must be finite and >= 0");
  }
  if (threat_model.kind == ThreatKind::kPlaintextDP &&
      !(epsilon.has_value() && *epsilon > 0)) {
    return Invalid("epsilon", "plaintext_dp requires a positive epsilon");
  }
  return absl::OkStatus();
}

}  // namespace pmsr::proposal
