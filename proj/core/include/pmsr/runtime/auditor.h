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
#ifndef PMSR_RUNTIME_AUDITOR_H_
#define PMSR_RUNTIME_AUDITOR_H_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pmsr/proposal/types.h"
#include "pmsr/transport/messages.h"

namespace pmsr::runtime {

// Instrumentation for the no-individual-disclosure property. Contributors
// register their exact pre-noise map output (fixed-point encoded); every
// envelope that leaves any node is then compared against those vectors.
// Releases aggregating a single contributor are exempt.
class DisclosureAuditor {
 public:
  void RecordRaw(const proposal::ComputationId& id,
                 proposal::ThreatKind kind, NodeId contributor,
                 std::vector<uint64_t> encoded);

  void Inspect(const transport::Envelope& envelope);

  // Checks a released value that was recorded without an envelope.
  void InspectValues(const proposal::ComputationId& id,
                     const std::vector<double>& values, std::string_view where);

  const std::vector<std::string>& violations() const { return violations_; }
  size_t inspected() const { return inspected_; }

 private:
  struct Raw {
    proposal::ThreatKind kind;
    std::map<NodeId, std::vector<uint64_t>> by_contributor;
  };

  void Compare(const proposal::ComputationId& id,
               const std::vector<uint64_t>& values, std::string_view where);

  std::map<proposal::ComputationId, Raw> raw_;
  std::vector<std::string> violations_;
  size_t inspected_ = 0;
};

}  // namespace pmsr::runtime

#endif  // PMSR_RUNTIME_AUDITOR_H_
