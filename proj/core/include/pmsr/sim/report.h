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
#ifndef PMSR_SIM_REPORT_H_
#define PMSR_SIM_REPORT_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "pmsr/runtime/record.h"
#include "pmsr/stats/stats.h"

namespace pmsr::sim {

struct ComputationSummary {
  std::string id;
  // Scenario-specific tag such as "q17" or "real/r0/gini".
  std::string label;
  runtime::Phase phase = runtime::Phase::kProposed;
  uint32_t participants = 0;
  // Issue tick of the proposal and tick of the recorded outcome.
  Tick start_tick = 0;
  Tick end_tick = 0;
  std::vector<double> aggregate;
  std::string abort_reason;
  std::vector<NodeId> contributors;
};

struct CategoryRow {
  std::string name;
  double observed = 0;
  double baseline = 0;
  double ratio = 0;
};

struct ScenarioReport {
  std::string scenario;
  uint64_t seed = 0;
  std::vector<ComputationSummary> computations;
  // Proposal-to-release ticks over Released computations only.
  std::optional<stats::SummaryStats> latency;
  std::optional<double> ms_per_tick;
  // participants -> number of computations with that many participants.
  std::map<uint32_t, uint32_t> participation;
  std::map<std::string, double> metrics;
  std::vector<CategoryRow> categories;
  std::vector<double> ledger_trajectory;
  uint64_t envelopes_sent = 0;
  uint64_t envelopes_delivered = 0;
  uint64_t envelopes_dropped = 0;
  std::string trace_hash;
  std::vector<std::string> invariant_violations;

  size_t released() const;
  size_t aborted() const;
  double mean_latency() const { return latency ? latency->mean : 0.0; }

  std::string ToJson() const;
  // computation_id,phase,participants,start_tick,end_tick,aggregate_json_or_reason
  std::string ComputationsCsv() const;
  // category,observed,baseline,ratio
  std::string CategoriesCsv() const;
  // scenario=<name> released=<k> aborted=<m> mean_latency_ticks=<x>
  std::string SummaryLine() const;
};

// Shortest round-trip decimal form.
std::string FormatDouble(double v);

// Writes `contents` to `path` through a temporary file and a rename.
absl::Status WriteFileAtomic(const std::string& path,
                             const std::string& contents);

// report.json, computations.csv, categories.csv and trace.csv under `dir`.
absl::Status WriteReport(const ScenarioReport& report,
                         const std::string& trace_csv, const std::string& dir);

}  // namespace pmsr::sim

#endif  // PMSR_SIM_REPORT_H_
