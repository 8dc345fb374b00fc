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
#include "pmsr/runtime/auditor.h"

#include "pmsr/common/strings.h"
#include "pmsr/mapper/fixed_point.h"
#include "pmsr/reduce/backend.h"

namespace pmsr::runtime {

using proposal::ThreatKind;

void DisclosureAuditor::RecordRaw(const proposal::ComputationId& id,
                                  ThreatKind kind, NodeId contributor,
                                  std::vector<uint64_t> encoded) {
  Raw& raw = raw_[id];
  raw.kind = kind;
  raw.by_contributor[contributor] = std::move(encoded);
}

void DisclosureAuditor::Compare(const proposal::ComputationId& id,
                                const std::vector<uint64_t>& values,
                                std::string_view where) {
  ++inspected_;
  auto it = raw_.find(id);
  if (it == raw_.end()) return;
  for (const auto& [contributor, raw] : it->second.by_contributor) {
    if (raw == values) {
      violations_.push_back(StrCat("raw output of node ", contributor,
                                   " disclosed in ", where, " for ", id.Hex()));
    }
  }
}

void DisclosureAuditor::Inspect(const transport::Envelope& envelope) {
  const proposal::ComputationId& id =
      transport::PayloadComputationId(envelope.payload);
  auto it = raw_.find(id);
  if (it == raw_.end()) return;
  const ThreatKind kind = it->second.kind;
  const std::string where =
      StrCat(transport::PayloadKindName(envelope.payload), " ", envelope.from,
             "->", envelope.to);

  auto inspect_wire = [&](ThreatKind wire_kind, const Bytes& wire) {
    auto decoded = reduce::DecodeShareWire(wire_kind, wire);
    if (!decoded.ok() || !decoded->second.ciphertexts.empty()) return;
    Compare(id, decoded->second.ring, where);
  };

  if (const auto* submit = std::get_if<transport::ShareSubmit>(
          &envelope.payload)) {
    inspect_wire(kind, submit->wire);
  } else if (const auto* partial = std::get_if<transport::ReducePartial>(
                 &envelope.payload)) {
    if (partial->wire.empty()) return;
    ThreatKind wire_kind = kind;
    if (partial->stage == transport::PartialStage::kDecrypt) {
      wire_kind = ThreatKind::kAdditiveHE;
    } else if (kind == ThreatKind::kAdditiveHE) {
      wire_kind = ThreatKind::kPlaintextDP;
    }
    inspect_wire(wire_kind, partial->wire);
  } else if (const auto* release = std::get_if<transport::AggregateRelease>(
                 &envelope.payload)) {
    if (release->participants > 1) {
      InspectValues(id, release->values, where);
    }
  }
}

void DisclosureAuditor::InspectValues(const proposal::ComputationId& id,
                                      const std::vector<double>& values,
                                      std::string_view where) {
  std::vector<uint64_t> encoded;
  encoded.reserve(values.size());
  for (double v : values) {
    auto fp = mapper::EncodeFixed(v);
    if (!fp.ok()) return;
    encoded.push_back(fp->raw);
  }
  Compare(id, encoded, where);
}

}  // namespace pmsr::runtime
