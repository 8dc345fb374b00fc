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
#include <cmath>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "pmsr/common/status.h"
#include "pmsr/common/strings.h"
#include "pmsr/sim/generators.h"
#include "pmsr/sim/scenario.h"
#include "pmsr/stats/stats.h"

namespace pmsr::sim {
namespace {

using runtime::Phase;

ScenarioConfig Config(std::string_view name) { return *DefaultConfig(name); }

// Gossip reach does not depend on dropout, so the contributors of a
// dropout-free run are exactly the reached nodes.
size_t Responders(const ScenarioConfig& cfg) {
  ScenarioConfig baseline = cfg;
  baseline.dropout_rate = 0;
  const auto reached = RunScenario(baseline)->computations[0].contributors;
  const auto mask = DropoutMask(cfg.dropout_seed.value_or(cfg.seed),
                                cfg.n_light, cfg.dropout_rate);
  size_t n = 0;
  for (NodeId c : reached) n += mask[c] ? 0 : 1;
  return n;
}

TEST(SleepStatsTest, ReleasedMeanMatchesPlaintextOracle) {
  ScenarioConfig cfg = Config("sleep_stats");
  ASSERT_EQ(cfg.n_light, 1000u);
  ASSERT_EQ(cfg.n_heavy, 50u);
  ASSERT_EQ(cfg.min_participants, 500u);
  auto report = RunScenario(cfg);
  ASSERT_TRUE(report.ok()) << report.status();
  ASSERT_EQ(report->computations.size(), 1u);
  const ComputationSummary& s = report->computations[0];
  ASSERT_EQ(s.phase, Phase::kReleased);
  EXPECT_EQ(s.participants, report->metrics.at("reached_nodes"));
  EXPECT_GE(s.participants, 950u);

  double total = 0;
  for (NodeId c : s.contributors) {
    const auto scores = SleepScores(cfg.seed, static_cast<uint32_t>(c),
                                    cfg.data.days);
    double node_sum = 0;
    for (double v : scores) node_sum += v;
    total += node_sum / static_cast<double>(scores.size());
  }
  const double n = static_cast<double>(s.contributors.size());
  EXPECT_LE(std::fabs(s.aggregate[0] - total / n),
            std::ldexp(1.0, -16) * (1 + 1 / n));
  EXPECT_TRUE(report->invariant_violations.empty());
}

TEST(SleepStatsTest, DropoutBelowThresholdAbortsWithNothingReleased) {
  auto report = RunScenario(InjectDropout(Config("sleep_stats"), 0.6));
  ASSERT_TRUE(report.ok());
  const ComputationSummary& s = report->computations[0];
  EXPECT_EQ(s.phase, Phase::kAborted);
  EXPECT_EQ(s.abort_reason, runtime::kInsufficientParticipants);
  EXPECT_TRUE(s.aggregate.empty());
  EXPECT_EQ(report->released(), 0u);
}

TEST(DropoutTest, ZeroRateIsBaseline) {
  ScenarioConfig cfg = Config("custom");
  EXPECT_EQ(RunScenario(InjectDropout(cfg, 0.0))->ToJson(),
            RunScenario(cfg)->ToJson());
}

TEST(DropoutTest, FullRateAbortsEverything) {
  for (const char* name : {"sleep_stats", "ensemble", "custom"}) {
    ScenarioConfig cfg = Config(name);
    cfg.data.questions = 20;
    auto report = RunScenario(InjectDropout(cfg, 1.0));
    ASSERT_TRUE(report.ok()) << name;
    EXPECT_EQ(report->released(), 0u) << name;
    for (const auto& s : report->computations) {
      EXPECT_EQ(s.abort_reason, runtime::kInsufficientParticipants) << name;
    }
  }
}

void CheckBinomialSweep(double rate, bool expect_both_outcomes) {
  size_t released = 0;
  size_t aborted = 0;
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    ScenarioConfig cfg = Config("sleep_stats");
    cfg.seed = seed;
    cfg.data.days = 7;
    cfg = InjectDropout(cfg, rate, seed * 31);
    const size_t responders = Responders(cfg);
    auto report = RunScenario(cfg);
    ASSERT_TRUE(report.ok());
    const ComputationSummary& s = report->computations[0];
    if (responders >= cfg.min_participants) {
      EXPECT_EQ(s.phase, Phase::kReleased) << seed;
      EXPECT_EQ(s.participants, responders) << seed;
      ++released;
    } else {
      EXPECT_EQ(s.phase, Phase::kAborted) << seed;
      ++aborted;
    }
    EXPECT_EQ(report->metrics.at("responders"),
              static_cast<double>(responders));
  }
  if (expect_both_outcomes) {
    EXPECT_GT(released, 0u);
    EXPECT_GT(aborted, 0u);
  }
}

TEST(DropoutTest, ThirtyPercentMatchesResponderDraw) {
  CheckBinomialSweep(0.3, false);
}

TEST(DropoutTest, HalfRateMatchesResponderDrawOnBothSides) {
  CheckBinomialSweep(0.5, true);
}

TEST(DropoutTest, MaskIsSeededBernoulli) {
  EXPECT_EQ(DropoutMask(5, 100, 0.3), DropoutMask(5, 100, 0.3));
  EXPECT_NE(DropoutMask(5, 100, 0.3), DropoutMask(6, 100, 0.3));
  const auto mask = DropoutMask(9, 100000, 0.3);
  const double frac =
      static_cast<double>(std::count(mask.begin(), mask.end(), true)) / 1e5;
  EXPECT_NEAR(frac, 0.3, 0.006);
}

TEST(EnsembleTest, SecureDecisionsMatchPlaintextOracle) {
  auto report = RunScenario(Config("ensemble"));
  ASSERT_TRUE(report.ok());
  EXPECT_EQ(report->released(), 1000u);
  EXPECT_EQ(report->metrics.at("decision_matches"), 1000.0);
  EXPECT_EQ(report->metrics.at("ensemble_accuracy"),
            report->metrics.at("oracle_accuracy"));
  EXPECT_GT(report->metrics.at("ensemble_accuracy"),
            report->metrics.at("best_single_accuracy"));
  for (int m = 0; m < 6; ++m) {
    EXPECT_LE(report->metrics.at(StrCat("model_", m, "_accuracy")),
              report->metrics.at("theoretical_max"));
  }
}

TEST(EnsembleTest, FourModelsAbortEveryQuestion) {
  ScenarioConfig cfg = Config("ensemble");
  cfg.n_light = 4;
  cfg.data.questions = 100;
  auto report = RunScenario(cfg);
  ASSERT_TRUE(report.ok());
  EXPECT_EQ(report->computations.size(), 100u);
  EXPECT_EQ(report->aborted(), 100u);
}

TEST(EnsembleTest, PerfectModelGivesTheoreticalMaxOne) {
  ScenarioConfig cfg = Config("ensemble");
  cfg.data.questions = 100;
  cfg.data.perfect_model = 2;
  auto report = RunScenario(cfg);
  ASSERT_TRUE(report.ok());
  EXPECT_EQ(report->metrics.at("theoretical_max"), 1.0);
  EXPECT_EQ(report->metrics.at("model_2_accuracy"), 1.0);
}

TEST(AuditTest, TechnologyRatioNearThree) {
  for (uint64_t seed : {1, 2, 3, 42}) {
    ScenarioConfig cfg = Config("audit");
    cfg.seed = seed;
    auto report = RunScenario(cfg);
    ASSERT_TRUE(report.ok());
    const double n = report->metrics.at("impressions");
    const double base = IndustryBaseline()[kTechnologyIndex];
    const double p = 3 * base;
    const double b = 1.0 / cfg.data.query_epsilon;
    const double sd = std::sqrt(n * p * (1 - p) + 2 * b * b) / (n * base);
    EXPECT_NEAR(report->metrics.at("technology_ratio"), 3.0, 4 * sd) << seed;
    EXPECT_NEAR(report->metrics.at("mock_technology_ratio"), 3.0, 4 * sd);
    ASSERT_FALSE(report->categories.empty());
    EXPECT_EQ(report->categories[kTechnologyIndex].name, "technology");
  }
}

TEST(AuditTest, LedgerPinsAtTotalAndLaterQueriesGoUnanswered) {
  auto report = RunScenario(Config("audit"));
  ASSERT_TRUE(report.ok());
  const auto& t = report->ledger_trajectory;
  ASSERT_EQ(t.size(), 9u);
  EXPECT_TRUE(std::is_sorted(t.begin(), t.end()));
  EXPECT_DOUBLE_EQ(t.back(), 1.5);
  EXPECT_DOUBLE_EQ(report->metrics.at("budget_spent"), 1.5);
  EXPECT_EQ(report->metrics.at("real_queries_answered"), 6.0);
  EXPECT_EQ(report->metrics.at("real_queries_unanswered"), 3.0);
  EXPECT_EQ(report->metrics.at("real_share_submits"), 6.0);
  for (const auto& s : report->computations) {
    if (s.label.rfind("real/r2", 0) == 0) {
      EXPECT_EQ(s.phase, Phase::kAborted) << s.label;
      EXPECT_EQ(s.participants, 0u);
    }
  }
}

TEST(AuditTest, ParetoInequalityExceedsUniform) {
  auto report = RunScenario(Config("audit"));
  ASSERT_TRUE(report.ok());
  EXPECT_NEAR(report->metrics.at("true_gini"), 0.68, 0.08);
  EXPECT_GT(report->metrics.at("true_top_decile_share"),
            2 * report->metrics.at("uniform_top_decile_share"));
  EXPECT_GT(report->metrics.at("dp_top_decile_share"),
            report->metrics.at("uniform_top_decile_share"));
}

TEST(CustomTest, ReleasesMatchOracleExactly) {
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    ScenarioConfig cfg = Config("custom");
    cfg.seed = seed;
    auto report = RunScenario(cfg);
    ASSERT_TRUE(report.ok());
    EXPECT_EQ(report->metrics.at("oracle_checked"),
              report->metrics.at("oracle_exact_matches"));
    EXPECT_TRUE(report->invariant_violations.empty());
  }
}

TEST(ScenarioTest, DeterministicReportAndTrace) {
  for (const char* name : {"sleep_stats", "custom", "audit"}) {
    ScenarioConfig cfg = Config(name);
    cfg.n_light = std::min<uint32_t>(cfg.n_light, 200);
    cfg.min_participants = std::min<uint32_t>(cfg.min_participants, 100);
    cfg.network.drop_rate = 0.05;
    auto a = RunScenario(cfg);
    auto b = RunScenario(cfg);
    ASSERT_TRUE(a.ok() && b.ok()) << name;
    EXPECT_EQ(a->ToJson(), b->ToJson()) << name;
    EXPECT_EQ(a->ComputationsCsv(), b->ComputationsCsv());
    EXPECT_EQ(a->trace_hash, b->trace_hash);
    cfg.seed += 1;
    EXPECT_NE(RunScenario(cfg)->trace_hash, a->trace_hash) << name;
  }
}

TEST(ScenarioTest, ConfigValidation) {
  EXPECT_TRUE(HasErrorCode(DefaultConfig("nope").status(),
                           ErrorCode::kConfigInvalid));
  ScenarioConfig cfg = Config("sleep_stats");
  EXPECT_TRUE(cfg.Validate().ok());

  auto expect_invalid = [](ScenarioConfig c, std::string_view field) {
    const absl::Status s = c.Validate();
    EXPECT_TRUE(HasErrorCode(s, ErrorCode::kConfigInvalid)) << field;
    EXPECT_NE(std::string(s.message()).find(field), std::string::npos) << s;
    EXPECT_TRUE(HasErrorCode(RunScenario(c).status(),
                             ErrorCode::kConfigInvalid));
  };
  ScenarioConfig c = cfg;
  c.n_heavy = 2;
  expect_invalid(c, "n_heavy");
  c = cfg;
  c.dropout_rate = 1.5;
  expect_invalid(c, "dropout");
  c = cfg;
  c.min_participants = 0;
  expect_invalid(c, "min_participants");
  c = cfg;
  c.epsilon = -1;
  expect_invalid(c, "epsilon");
  c = cfg;
  c.name = "other";
  expect_invalid(c, "name");
}

TEST(ScenarioTest, ShamirAndHeScenariosRelease) {
  ScenarioConfig cfg = Config("custom");
  cfg.n_heavy = 5;
  cfg.threat_model = proposal::ThreatModel::Shamir(3, 5);
  auto shamir = RunScenario(cfg);
  ASSERT_TRUE(shamir.ok());
  EXPECT_EQ(shamir->released(), 3u);
  cfg.threat_model = proposal::ThreatModel::AdditiveHE();
  cfg.he_bits = 512;
  auto he = RunScenario(cfg);
  ASSERT_TRUE(he.ok());
  EXPECT_EQ(he->released(), 3u);
  EXPECT_EQ(he->metrics.at("oracle_exact_matches"), 3.0);
}

TEST(ScenarioTest, SummaryLineFormat) {
  auto report = RunScenario(Config("custom"));
  ASSERT_TRUE(report.ok());
  EXPECT_EQ(report->SummaryLine(),
            StrCat("scenario=custom released=", report->released(),
                   " aborted=", report->aborted(), " mean_latency_ticks=",
                   FormatDouble(report->mean_latency())));
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(GoldenTest, CustomScenarioReport) {
  ScenarioConfig cfg = Config("custom");
  cfg.seed = 7;
  auto report = RunScenario(cfg);
  ASSERT_TRUE(report.ok());
  const std::string dir = PMSR_GOLDEN_DIR "/custom_seed7";
  EXPECT_EQ(report->ToJson(), ReadFile(dir + "/report.json"));
  EXPECT_EQ(report->ComputationsCsv(), ReadFile(dir + "/computations.csv"));
}

}  // namespace
}  // namespace pmsr::sim
