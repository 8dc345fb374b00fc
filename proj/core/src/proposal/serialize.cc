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
#include "pmsr/proposal/serialize.h"

#include <algorithm>
#include <string>

#include "pmsr/common/status.h"

namespace pmsr::proposal {
namespace {

constexpr uint8_t kMagic[] = {'P', 'M', 'S', 'P'};
constexpr uint8_t kVersion = 1;

void WriteDoubles(ByteWriter& w, const std::vector<double>& values) {
  w.U32(static_cast<uint32_t>(values.size()));
  for (double v : values) w.F64(v);
}

void WriteOptionalString(ByteWriter& w, const std::optional<std::string>& s) {
  w.U8(s.has_value() ? 1 : 0);
  if (s.has_value()) w.String(*s);
}

absl::Status Truncated(std::string_view where) {
  return MakeError(ErrorCode::kParseError,
                   std::string("truncated at ") + std::string(where));
}

// Reads one value or bails out of the enclosing function with ParseError.
#define PMSR_READ(var, expr, where)          \
  auto var = (expr);                         \
  if (!var.has_value()) return Truncated(where)

absl::StatusOr<std::vector<double>> ReadDoubles(ByteReader& r,
                                                std::string_view where) {
  PMSR_READ(n, r.U32(), where);
  if (*n > r.remaining() / 8) return Truncated(where);
  std::vector<double> out;
  out.reserve(*n);
  for (uint32_t i = 0; i < *n; ++i) {
    PMSR_READ(v, r.F64(), where);
    out.push_back(*v);
  }
  return out;
}

absl::StatusOr<std::vector<NodeId>> ReadNodes(ByteReader& r,
                                              std::string_view where) {
  PMSR_READ(n, r.U32(), where);
  if (*n > r.remaining() / 4) return Truncated(where);
  std::vector<NodeId> out;
  out.reserve(*n);
  for (uint32_t i = 0; i < *n; ++i) {
    PMSR_READ(v, r.U32(), where);
    out.push_back(*v);
  }
  return out;
}

absl::StatusOr<std::optional<std::string>> ReadOptionalString(
    ByteReader& r, std::string_view where) {
  PMSR_READ(flag, r.U8(), where);
  if (*flag > 1) {
    return MakeError(ErrorCode::kParseError, "bad presence flag");
  }
  if (*flag == 0) return std::optional<std::string>();
  PMSR_READ(s, r.String(), where);
  return std::optional<std::string>(*s);
}

}  // namespace

absl::StatusOr<Bytes> CanonicalSerialize(const ComputationProposal& p) {
  PMSR_RETURN_IF_ERROR(p.Validate());
  ByteWriter w;
  w.Raw(kMagic);
  w.U8(kVersion);
  w.Raw(p.id.bytes);
  w.U64(p.deadline);
  w.U32(p.min_participants);
  w.U64(p.budget);
  w.U32(static_cast<uint32_t>(p.targets.size()));
  for (NodeId t : p.targets) w.U32(t);
  w.U32(static_cast<uint32_t>(p.quorum.size()));
  for (NodeId q : p.quorum) w.U32(q);

  w.U8(static_cast<uint8_t>(p.map_spec.fn));
  w.String(p.map_spec.field);
  WriteDoubles(w, p.map_spec.bin_edges);
  w.U32(p.map_spec.window);
  w.U32(p.map_spec.item_id);
  w.U8(p.map_spec.bounds.has_value() ? 1 : 0);
  if (p.map_spec.bounds.has_value()) {
    w.F64(p.map_spec.bounds->first);
    w.F64(p.map_spec.bounds->second);
  }
  WriteOptionalString(w, p.map_post);

  w.U32(static_cast<uint32_t>(p.output_schema.fields.size()));
  for (const SchemaField& f : p.output_schema.fields) {
    w.String(f.name);
    w.U8(static_cast<uint8_t>(f.kind));
    w.U32(f.length);
    WriteDoubles(w, f.bin_edges);
  }

  w.U8(static_cast<uint8_t>(p.reduce_spec.fn));
  WriteDoubles(w, p.reduce_spec.weights);
  w.U8(p.reduce_spec.compatibility);
  WriteOptionalString(w, p.reduce_post);

  w.U8(static_cast<uint8_t>(p.threat_model.kind));
  w.U32(p.threat_model.threshold);
  w.U32(p.threat_model.parties);

  w.Blob(p.proposer);
  w.U8(p.epsilon.has_value() ? 1 : 0);
  if (p.epsilon.has_value()) w.F64(*p.epsilon);
  return w.Take();
}

absl::StatusOr<ComputationProposal> DeserializeProposal(
    std::span<const uint8_t> bytes) {
  ByteReader r(bytes);
  ComputationProposal p;
  PMSR_READ(magic, r.Raw(sizeof(kMagic)), "magic");
  if (!std::equal(magic->begin(), magic->end(), std::begin(kMagic))) {
    return MakeError(ErrorCode::kParseError, "bad magic");
  }
  PMSR_READ(version, r.U8(), "version");
  if (*version != kVersion) {
    return MakeError(ErrorCode::kParseError, "unsupported version");
  }
  PMSR_READ(id, r.Raw(16), "id");
  std::copy(id->begin(), id->end(), p.id.bytes.begin());
  PMSR_READ(deadline, r.U64(), "deadline");
  p.deadline = *deadline;
  PMSR_READ(min_participants, r.U32(), "min_participants");
  p.min_participants = *min_participants;
  PMSR_READ(budget, r.U64(), "budget");
  p.budget = *budget;
  PMSR_ASSIGN_OR_RETURN(p.targets, ReadNodes(r, "targets"));
  PMSR_ASSIGN_OR_RETURN(p.quorum, ReadNodes(r, "quorum"));

  PMSR_READ(map_fn, r.U8(), "map_spec");
  if (*map_fn > static_cast<uint8_t>(MapFn::kLogprobVector)) {
    return MakeError(ErrorCode::kParseError, "unknown map function");
  }
  p.map_spec.fn = static_cast<MapFn>(*map_fn);
  PMSR_READ(field, r.String(), "map_spec.field");
  p.map_spec.field = *field;
  PMSR_ASSIGN_OR_RETURN(p.map_spec.bin_edges,
                        ReadDoubles(r, "map_spec.bin_edges"));
  PMSR_READ(window, r.U32(), "map_spec.window");
  p.map_spec.window = *window;
  PMSR_READ(item_id, r.U32(), "map_spec.item_id");
  p.map_spec.item_id = *item_id;
  PMSR_READ(has_bounds, r.U8(), "map_spec.bounds");
  if (*has_bounds > 1) return MakeError(ErrorCode::kParseError, "bad flag");
  if (*has_bounds == 1) {
    PMSR_READ(lo, r.F64(), "map_spec.bounds");
    PMSR_READ(hi, r.F64(), "map_spec.bounds");
    p.map_spec.bounds = std::make_pair(*lo, *hi);
  }
  PMSR_ASSIGN_OR_RETURN(p.map_post, ReadOptionalString(r, "map_post"));

  PMSR_READ(n_fields, r.U32(), "output_schema");
  if (*n_fields > r.remaining()) return Truncated("output_schema");
  for (uint32_t i = 0; i < *n_fields; ++i) {
    SchemaField f;
    PMSR_READ(name, r.String(), "output_schema.name");
    f.name = *name;
    PMSR_READ(kind, r.U8(), "output_schema.kind");
    if (*kind > static_cast<uint8_t>(FieldKind::kHistogram)) {
      return MakeError(ErrorCode::kParseError, "unknown field kind");
    }
    f.kind = static_cast<FieldKind>(*kind);
    PMSR_READ(length, r.U32(), "output_schema.length");
    f.length = *length;
    PMSR_ASSIGN_OR_RETURN(f.bin_edges, ReadDoubles(r, "output_schema.edges"));
    p.output_schema.fields.push_back(std::move(f));
  }

  PMSR_READ(reduce_fn, r.U8(), "reduce_spec");
  if (*reduce_fn > static_cast<uint8_t>(ReduceFn::kTheoMax)) {
    return MakeError(ErrorCode::kParseError, "unknown reduce function");
  }
  p.reduce_spec.fn = static_cast<ReduceFn>(*reduce_fn);
  PMSR_ASSIGN_OR_RETURN(p.reduce_spec.weights,
                        ReadDoubles(r, "reduce_spec.weights"));
  PMSR_READ(compat, r.U8(), "reduce_spec.compatibility");
  p.reduce_spec.compatibility = *compat;
  PMSR_ASSIGN_OR_RETURN(p.reduce_post, ReadOptionalString(r, "reduce_post"));

  PMSR_READ(threat, r.U8(), "threat_model");
  if (*threat >= kNumThreatKinds) {
    return MakeError(ErrorCode::kParseError, "unknown threat model");
  }
  p.threat_model.kind = static_cast<ThreatKind>(*threat);
  PMSR_READ(t, r.U32(), "threat_model.t");
  p.threat_model.threshold = *t;
  PMSR_READ(n, r.U32(), "threat_model.n");
  p.threat_model.parties = *n;

  PMSR_READ(proposer, r.Blob(), "proposer");
  p.proposer = *proposer;
  PMSR_READ(has_epsilon, r.U8(), "epsilon");
  if (*has_epsilon > 1) return MakeError(ErrorCode::kParseError, "bad flag");
  if (*has_epsilon == 1) {
    PMSR_READ(eps, r.F64(), "epsilon");
    p.epsilon = *eps;
  }
  if (!r.done()) return MakeError(ErrorCode::kParseError, "trailing bytes");
  PMSR_RETURN_IF_ERROR(p.Validate());
  return p;
}

#undef PMSR_READ

}  // namespace pmsr::proposal
