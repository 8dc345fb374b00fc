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
#ifndef PMSR_SIM_SCENARIO_H_
#define PMSR_SIM_SCENARIO_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "pmsr/runtime/cluster.h"
#include "pmsr/sim/generators.h"
#include "pmsr/sim/report.h"

namespace pmsr::sim {

struct DataGenConfig {
  // sleep_stats
  uint32_t days = 365;
  // ensemble
  uint32_t questions = 1000;
  uint32_t choices = 4;
  // Cycled over the model nodes.
  std::vector<double> weights = {0.349, 0.303, 0.347};
  // Signal added to the true label's logit, cycled over the model nodes.
  std::vector<double> strengths = {1.2, 1.0, 1.15, 1.05, 0.95, 1.1};
  // Model index whose signal is overwhelming, or -1.
  int perfect_model = -1;
  // audit
  AuditCorpusOptions audit;
  uint32_t audit_rounds = 3;
  double budget_total = 1.5;
  double query_epsilon = 0.25;
  uint32_t mock_k = 2000;
  // custom
  uint32_t computations = 3;
  uint32_t rows_min = 5;
  uint32_t rows_max = 20;
};

// Scenario names: sleep_stats, ensemble, audit, custom. The audit scenario
// always runs one mock and one real platform node and ignores n_light.
struct ScenarioConfig {
  std::string name = "sleep_stats";
  uint32_t n_light = 1000;
  uint32_t n_heavy = 50;
  proposal::ThreatModel threat_model = proposal::ThreatModel::SemiHonest3PC();
  uint32_t min_participants = 500;
  Tick deadline_ticks = 40;
  uint64_t seed = 42;
  double dropout_rate = 0.0;
  // Seed for the dropout draws; the scenario seed when unset.
  std::optional<uint64_t> dropout_seed;
  // The seed field is replaced by one derived from `seed`.
  transport::NetworkConfig network = {0, 1, 3, 0.0, 4, 8};
  Tick reduce_timeout = 16;
  int he_bits = 1024;
  // DP budget requested by each proposal.
  std::optional<double> epsilon;
  // Presentation factor; adds millisecond latency figures to the report.
  std::optional<double> ms_per_tick;
  DataGenConfig data;

  // ConfigInvalid naming the offending setting.
  absl::Status Validate() const;
};

// The documented defaults for a named scenario; ConfigInvalid if unknown.
absl::StatusOr<ScenarioConfig> DefaultConfig(std::string_view name);

// Every light node independently fails to respond with probability `rate`,
// drawn from `seed` (the scenario seed if unset). Heavy nodes never drop.
ScenarioConfig InjectDropout(ScenarioConfig cfg, double rate,
                             std::optional<uint64_t> seed = std::nullopt);

struct ScenarioRun {
  ScenarioReport report;
  std::unique_ptr<runtime::Cluster> cluster;
};

// Builds the nodes, issues the scenario's proposals and drives the network
// to quiescence. Deterministic in the config.
absl::StatusOr<ScenarioRun> RunScenarioDetailed(const ScenarioConfig& cfg);
absl::StatusOr<ScenarioReport> RunScenario(const ScenarioConfig& cfg);

// Plaintext shadow of the secure pipeline: the reduce function applied to
// the exact integer sum of the contributors' encoded map outputs.
absl::StatusOr<std::vector<double>> OracleAggregate(
    const proposal::ComputationProposal& proposal,
    const std::vector<const mapper::LocalDataset*>& contributor_data,
    const std::vector<size_t>& weight_index);

}  // namespace pmsr::sim

#endif  // PMSR_SIM_SCENARIO_H_
