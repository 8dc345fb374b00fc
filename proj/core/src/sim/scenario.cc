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
#include "pmsr/sim/scenario.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "pmsr/common/status.h"
#include "pmsr/common/strings.h"
#include "pmsr/mapper/map_functions.h"
#include "pmsr/mapper/mock.h"
#include "pmsr/policy/policy.h"
#include "pmsr/reduce/functions.h"

namespace pmsr::sim {
namespace {

using proposal::ComputationId;
using proposal::ComputationProposal;
using proposal::FieldKind;
using proposal::MapFn;
using proposal::ReduceFn;
using proposal::ThreatKind;
using runtime::Phase;

inline constexpr uint64_t kNetworkStream = 0x4e45'0000'0000'0000ULL;
inline constexpr uint64_t kMockStream = 0x4d4f'0000'0000'0000ULL;
inline constexpr uint64_t kCustomStream = 0x4355'0000'0000'0000ULL;
inline constexpr Tick kMaxTick = 1'000'000'000;
inline constexpr std::string_view kAnalyst = "analyst@research.pmsr.example";

absl::Status Invalid(std::string_view what) {
  return MakeError(ErrorCode::kConfigInvalid, what);
}

struct World {
  std::unique_ptr<runtime::Cluster> cluster;
  std::vector<NodeId> lights;
  std::vector<NodeId> heavies;
  NodeId proposer = 0;
  proposal::KeyPair proposer_keys;
  Rng rng{0};
  std::vector<std::pair<ComputationId, std::string>> issued;
};

proposal::KeyPair NodeKeys(uint64_t seed, uint32_t slot) {
  return proposal::KeyPairFromSeed(MixSeed(seed, kKeyStream + slot));
}

policy::PrivacyPolicy MustParsePolicy(std::string_view text) {
  return *policy::ParsePolicy(text);
}

absl::StatusOr<World> BuildWorld(
    const ScenarioConfig& cfg,
    std::vector<runtime::LightNodeOptions> light_options) {
  runtime::ClusterOptions options;
  options.network = cfg.network;
  options.network.seed = MixSeed(cfg.seed, kNetworkStream);
  options.reduce_timeout = cfg.reduce_timeout;
  options.he_bits = cfg.he_bits;
  options.seed = cfg.seed;
  World world;
  world.rng = Rng(MixSeed(cfg.seed, kScenarioStream));
  PMSR_ASSIGN_OR_RETURN(world.cluster, runtime::Cluster::Create(options));
  uint32_t slot = 0;
  for (runtime::LightNodeOptions& opt : light_options) {
    PMSR_ASSIGN_OR_RETURN(
        NodeId id,
        world.cluster->AddLightNode(NodeKeys(cfg.seed, slot++), std::move(opt)));
    world.lights.push_back(id);
  }
  for (uint32_t h = 0; h < cfg.n_heavy; ++h) {
    PMSR_ASSIGN_OR_RETURN(
        NodeId id, world.cluster->AddHeavyNode(NodeKeys(cfg.seed, slot++)));
    world.heavies.push_back(id);
  }
  world.proposer_keys = NodeKeys(cfg.seed, slot++);
  PMSR_ASSIGN_OR_RETURN(
      world.proposer,
      world.cluster->AddProposer(world.proposer_keys, std::string(kAnalyst)));
  return world;
}

// Seeded round-robin: a random starting Heavy Node and its successors.
std::vector<NodeId> ChooseQuorum(World& world, size_t size) {
  const size_t n = world.heavies.size();
  const size_t start = world.rng.Below(n);
  std::vector<NodeId> quorum;
  for (size_t k = 0; k < size; ++k) {
    quorum.push_back(world.heavies[(start + k) % n]);
  }
  return quorum;
}

ComputationProposal BaseProposal(const ScenarioConfig& cfg, World& world,
                                 Tick issue_at) {
  ComputationProposal p;
  p.id = ComputationId::Random(world.rng);
  p.deadline = issue_at + cfg.deadline_ticks;
  p.min_participants = cfg.min_participants;
  p.threat_model = cfg.threat_model;
  p.quorum = ChooseQuorum(world, cfg.threat_model.QuorumSize());
  p.proposer = world.proposer_keys.public_key;
  p.epsilon = cfg.epsilon;
  return p;
}

absl::Status Issue(World& world, ComputationProposal p, Tick at,
                   std::string label) {
  p.reduce_spec.compatibility = proposal::SupportedCompatibility(
      p.reduce_spec.fn);
  PMSR_ASSIGN_OR_RETURN(proposal::SignedProposal sp,
                        proposal::SignProposal(p, world.proposer_keys));
  world.issued.emplace_back(p.id, std::move(label));
  return world.cluster->Schedule(at, world.proposer, std::move(sp));
}

ScenarioReport Finish(const ScenarioConfig& cfg, const World& world) {
  const runtime::Cluster& cluster = *world.cluster;
  ScenarioReport report;
  report.scenario = cfg.name;
  report.seed = cfg.seed;
  std::vector<double> latencies;
  for (const auto& [id, label] : world.issued) {
    ComputationSummary s;
    s.id = id.Hex();
    s.label = label;
    auto issued = cluster.issue_ticks().find(id);
    if (issued != cluster.issue_ticks().end()) s.start_tick = issued->second;
    auto outcome = cluster.outcomes().find(id);
    if (outcome != cluster.outcomes().end()) {
      const runtime::ComputationRecord& r = outcome->second;
      s.phase = r.phase;
      s.participants = r.participants;
      s.end_tick = r.end_tick;
      s.aggregate = r.aggregate;
      s.abort_reason = r.abort_reason;
      s.contributors = r.contributors;
    }
    if (s.phase == Phase::kReleased) {
      latencies.push_back(static_cast<double>(s.end_tick - s.start_tick));
    }
    ++report.participation[s.participants];
    report.computations.push_back(std::move(s));
  }
  if (!latencies.empty()) report.latency = *stats::Summarize(latencies);
  report.ms_per_tick = cfg.ms_per_tick;
  report.invariant_violations = cluster.CheckInvariants();
  report.envelopes_sent = cluster.network().sent();
  report.envelopes_delivered = cluster.network().delivered();
  report.envelopes_dropped = cluster.network().dropped();
  report.trace_hash = cluster.network().TraceHash();
  return report;
}

std::vector<bool> DropoutFor(const ScenarioConfig& cfg, size_t nodes) {
  return DropoutMask(cfg.dropout_seed.value_or(cfg.seed), nodes,
                     cfg.dropout_rate);
}

runtime::LightNodeOptions LightOptions(const ScenarioConfig& cfg,
                                       std::string_view policy_text,
                                       mapper::LocalDataset ds, bool responsive,
                                       uint32_t slot) {
  runtime::LightNodeOptions opt;
  opt.policy = MustParsePolicy(policy_text);
  opt.real_ds = std::move(ds);
  opt.responsive = responsive;
  opt.seed = MixSeed(cfg.seed, kNodeStream + slot);
  return opt;
}

std::vector<const mapper::LocalDataset*> DataOf(
    const runtime::Cluster& cluster, const std::vector<NodeId>& contributors) {
  std::vector<const mapper::LocalDataset*> out;
  for (NodeId n : contributors) {
    const runtime::LightNodeOptions& opt = cluster.light(n).options();
    out.push_back(opt.mode == mapper::Provenance::kMock && opt.mock_ds
                      ? &*opt.mock_ds
                      : &opt.real_ds);
  }
  return out;
}

// Appends a violation when a Released aggregate differs from the plaintext
// shadow computation. Only meaningful without DP noise.
void CheckAgainstOracle(const ScenarioConfig& cfg, const World& world,
                        ScenarioReport& report) {
  if (cfg.epsilon.has_value()) return;
  size_t checked = 0;
  size_t matched = 0;
  for (size_t i = 0; i < report.computations.size(); ++i) {
    const ComputationSummary& s = report.computations[i];
    if (s.phase != Phase::kReleased) continue;
    const auto& record = world.cluster->outcomes().at(world.issued[i].first);
    std::vector<size_t> weight_index;
    for (NodeId n : s.contributors) {
      const auto& t = record.proposal.targets;
      weight_index.push_back(static_cast<size_t>(
          std::lower_bound(t.begin(), t.end(), n) - t.begin()));
    }
    auto oracle = OracleAggregate(record.proposal,
                                  DataOf(*world.cluster, s.contributors),
                                  weight_index);
    ++checked;
    if (oracle.ok() && *oracle == s.aggregate) {
      ++matched;
    } else {
      report.invariant_violations.push_back(
          StrCat("aggregate of ", s.id, " differs from the plaintext oracle"));
    }
  }
  report.metrics["oracle_checked"] = static_cast<double>(checked);
  report.metrics["oracle_exact_matches"] = static_cast<double>(matched);
}

// --- sleep_stats -----------------------------------------------------------

absl::StatusOr<ScenarioRun> RunSleepStats(const ScenarioConfig& cfg) {
  const std::vector<bool> dropped = DropoutFor(cfg, cfg.n_light);
  const std::string policy_text =
      "require_min_participants 1\nallow_functions rolling_mean,mean\n";
  std::vector<runtime::LightNodeOptions> lights;
  for (uint32_t i = 0; i < cfg.n_light; ++i) {
    lights.push_back(LightOptions(cfg, policy_text,
                                  SleepDataset(cfg.seed, i, cfg.data.days),
                                  !dropped[i], i));
  }
  PMSR_ASSIGN_OR_RETURN(World world, BuildWorld(cfg, std::move(lights)));

  ComputationProposal p = BaseProposal(cfg, world, 0);
  p.map_spec.fn = MapFn::kRollingMean;
  p.map_spec.field = "score";
  p.map_spec.window = cfg.data.days;
  p.map_spec.bounds = std::make_pair(0.0, 100.0);
  p.output_schema.fields = {{"sleep_score", FieldKind::kFixed64, 0, {}}};
  p.reduce_spec.fn = ReduceFn::kMean;
  const ComputationId id = p.id;
  PMSR_RETURN_IF_ERROR(Issue(world, std::move(p), 0, "sleep_mean"));
  world.cluster->Run(kMaxTick);

  ScenarioReport report = Finish(cfg, world);
  size_t reached = 0;
  size_t responders = 0;
  for (uint32_t i = 0; i < cfg.n_light; ++i) {
    if (!world.cluster->network().HasSeen(world.lights[i], id)) continue;
    ++reached;
    responders += dropped[i] ? 0 : 1;
  }
  report.metrics["reached_nodes"] = static_cast<double>(reached);
  report.metrics["responders"] = static_cast<double>(responders);
  report.metrics["dropped_nodes"] = static_cast<double>(
      std::count(dropped.begin(), dropped.end(), true));
  const ComputationSummary& s = report.computations.front();
  if (s.phase == Phase::kReleased && !s.contributors.empty()) {
    double total = 0;
    for (NodeId n : s.contributors) {
      std::vector<double> scores = SleepScores(cfg.seed, n, cfg.data.days);
      double node_sum = 0;
      for (double v : scores) node_sum += v;
      total += node_sum / static_cast<double>(scores.size());
    }
    const double n = static_cast<double>(s.contributors.size());
    const double plaintext = total / n;
    report.metrics["secure_mean"] = s.aggregate.front();
    report.metrics["plaintext_mean"] = plaintext;
    report.metrics["abs_error"] = std::fabs(s.aggregate.front() - plaintext);
    report.metrics["error_bound"] = std::ldexp(1.0, -16) * (1.0 + 1.0 / n);
  }
  CheckAgainstOracle(cfg, world, report);
  return ScenarioRun{std::move(report), std::move(world.cluster)};
}

// --- ensemble --------------------------------------------------------------

size_t ArgMax(const std::vector<double>& row) {
  size_t best = 0;
  for (size_t c = 1; c < row.size(); ++c) {
    if (row[c] > row[best]) best = c;
  }
  return best;
}

absl::StatusOr<ScenarioRun> RunEnsemble(const ScenarioConfig& cfg) {
  const uint32_t models = cfg.n_light;
  std::vector<double> strengths(models);
  std::vector<double> weights(models);
  for (uint32_t m = 0; m < models; ++m) {
    strengths[m] = cfg.data.strengths[m % cfg.data.strengths.size()];
    weights[m] = cfg.data.weights[m % cfg.data.weights.size()];
  }
  if (cfg.data.perfect_model >= 0 &&
      static_cast<uint32_t>(cfg.data.perfect_model) < models) {
    strengths[cfg.data.perfect_model] = 60.0;
  }
  const EnsembleCorpus corpus = GenerateEnsembleCorpus(
      cfg.seed, cfg.data.questions, cfg.data.choices, strengths);
  const std::vector<bool> dropped = DropoutFor(cfg, models);
  const std::string policy_text =
      "require_min_participants 1\n"
      "allow_functions logprob_vector,gac_ensemble\n";
  std::vector<runtime::LightNodeOptions> lights;
  for (uint32_t m = 0; m < models; ++m) {
    lights.push_back(LightOptions(cfg, policy_text, ModelDataset(corpus, m),
                                  !dropped[m], m));
  }
  PMSR_ASSIGN_OR_RETURN(World world, BuildWorld(cfg, std::move(lights)));

  for (uint32_t q = 0; q < cfg.data.questions; ++q) {
    ComputationProposal p = BaseProposal(cfg, world, 0);
    p.targets = world.lights;
    p.map_spec.fn = MapFn::kLogprobVector;
    p.map_spec.item_id = q;
    p.output_schema.fields = {
        {"logprobs", FieldKind::kFixed64Vector, cfg.data.choices, {}}};
    p.reduce_spec.fn = ReduceFn::kGacEnsemble;
    p.reduce_spec.weights = weights;
    PMSR_RETURN_IF_ERROR(Issue(world, std::move(p), 0, StrCat("q", q)));
  }
  world.cluster->Run(kMaxTick);
  ScenarioReport report = Finish(cfg, world);

  const size_t questions = cfg.data.questions;
  size_t secure_correct = 0;
  size_t oracle_correct = 0;
  size_t matches = 0;
  std::vector<std::vector<bool>> correct(questions,
                                         std::vector<bool>(models, false));
  std::vector<size_t> model_correct(models, 0);
  for (size_t q = 0; q < questions; ++q) {
    const uint32_t label = corpus.labels[q];
    for (uint32_t m = 0; m < models; ++m) {
      const bool ok = ArgMax(corpus.logprobs[m][q]) == label;
      correct[q][m] = ok;
      model_correct[m] += ok ? 1 : 0;
    }
    const ComputationSummary& s = report.computations[q];
    if (s.phase != Phase::kReleased) continue;
    const size_t decision = static_cast<size_t>(s.aggregate.front());
    std::vector<std::vector<double>> matrix;
    std::vector<double> w;
    for (NodeId n : s.contributors) {
      const size_t m = static_cast<size_t>(
          std::find(world.lights.begin(), world.lights.end(), n) -
          world.lights.begin());
      matrix.push_back(corpus.logprobs[m][q]);
      w.push_back(weights[m]);
    }
    absl::StatusOr<size_t> oracle = reduce::GacEnsemble(matrix, w);
    if (oracle.ok() && *oracle == decision) ++matches;
    secure_correct += decision == label ? 1 : 0;
    oracle_correct += (oracle.ok() && *oracle == label) ? 1 : 0;
  }
  const double nq = static_cast<double>(questions);
  double best_single = 0;
  for (uint32_t m = 0; m < models; ++m) {
    const double acc = static_cast<double>(model_correct[m]) / nq;
    report.metrics[StrCat("model_", m, "_accuracy")] = acc;
    best_single = std::max(best_single, acc);
  }
  report.metrics["ensemble_accuracy"] = static_cast<double>(secure_correct) / nq;
  report.metrics["oracle_accuracy"] = static_cast<double>(oracle_correct) / nq;
  report.metrics["decision_matches"] = static_cast<double>(matches);
  report.metrics["best_single_accuracy"] = best_single;
  if (questions > 0 && models > 0) {
    PMSR_ASSIGN_OR_RETURN(double theo, reduce::TheoreticalMax(correct));
    report.metrics["theoretical_max"] = theo;
  }
  CheckAgainstOracle(cfg, world, report);
  return ScenarioRun{std::move(report), std::move(world.cluster)};
}

// --- audit -----------------------------------------------------------------

std::vector<double> UnitEdges(size_t bins) {
  std::vector<double> edges(bins + 1);
  for (size_t i = 0; i <= bins; ++i) edges[i] = static_cast<double>(i);
  return edges;
}

absl::StatusOr<ScenarioRun> RunAudit(const ScenarioConfig& cfg) {
  const AuditCorpus corpus = GenerateAuditCorpus(cfg.seed, cfg.data.audit);
  PMSR_ASSIGN_OR_RETURN(
      mapper::LocalDataset mock,
      mapper::DeriveMock(corpus.impressions,
                         mapper::MockMode::Subsample(
                             cfg.data.mock_k, MixSeed(cfg.seed, kMockStream))));
  const std::string functions =
      "allow_functions histogram_of,histogram_merge,gini,top_decile_share\n";
  const std::vector<bool> dropped = DropoutFor(cfg, 2);

  runtime::LightNodeOptions mock_node =
      LightOptions(cfg, functions, mapper::LocalDataset(), !dropped[0], 0);
  mock_node.mock_ds = std::move(mock);
  mock_node.mode = mapper::Provenance::kMock;
  runtime::LightNodeOptions real_node = LightOptions(
      cfg, functions + StrCat("dp_budget ", FormatDouble(cfg.data.budget_total),
                              "\n"),
      corpus.impressions, !dropped[1], 1);
  std::vector<runtime::LightNodeOptions> lights;
  lights.push_back(std::move(mock_node));
  lights.push_back(std::move(real_node));
  PMSR_ASSIGN_OR_RETURN(World world, BuildWorld(cfg, std::move(lights)));
  const NodeId mock_id = world.lights[0];
  const NodeId real_id = world.lights[1];

  const double epsilon = cfg.epsilon.value_or(cfg.data.query_epsilon);
  const size_t categories = IndustryNames().size();
  const size_t videos = cfg.data.audit.videos;
  struct Query {
    std::string name;
    std::string field;
    size_t bins;
    ReduceFn reduce;
  };
  const std::vector<Query> queries = {
      {"category", "category", categories, ReduceFn::kHistogramMerge},
      {"gini", "video_id", videos, ReduceFn::kGini},
      {"top_decile", "video_id", videos, ReduceFn::kTopDecileShare},
  };
  const Tick spacing = cfg.deadline_ticks + cfg.reduce_timeout +
                       2 * cfg.network.latency_max + 2;
  Tick at = 0;
  std::vector<std::pair<Tick, bool>> schedule;
  for (NodeId target : {mock_id, real_id}) {
    const std::string tag = target == mock_id ? "mock" : "real";
    for (uint32_t r = 0; r < cfg.data.audit_rounds; ++r) {
      for (const Query& q : queries) {
        ComputationProposal p = BaseProposal(cfg, world, at);
        p.epsilon = epsilon;
        p.targets = {target};
        p.map_spec.fn = MapFn::kHistogramOf;
        p.map_spec.field = q.field;
        p.map_spec.bin_edges = UnitEdges(q.bins);
        p.map_post = "clamp(0,1000000000000)";
        p.output_schema.fields = {
            {q.field + "_histogram", FieldKind::kHistogram, 0,
             p.map_spec.bin_edges}};
        p.reduce_spec.fn = q.reduce;
        PMSR_RETURN_IF_ERROR(Issue(world, std::move(p), at,
                                   StrCat(tag, "/r", r, "/", q.name)));
        schedule.emplace_back(at, target == real_id);
        at += spacing;
      }
    }
  }
  std::vector<double> trajectory;
  for (const auto& [issue_at, is_real] : schedule) {
    world.cluster->Run(issue_at + spacing - 1);
    if (is_real) {
      trajectory.push_back(world.cluster->light(real_id).ledger().spent());
    }
  }
  world.cluster->Run(kMaxTick);
  ScenarioReport report = Finish(cfg, world);
  report.ledger_trajectory = std::move(trajectory);

  auto first_released = [&](std::string_view prefix,
                             std::string_view name) -> const ComputationSummary* {
    for (const ComputationSummary& s : report.computations) {
      if (s.phase == Phase::kReleased && s.label.rfind(prefix, 0) == 0 &&
          s.label.size() > name.size() &&
          s.label.compare(s.label.size() - name.size(), name.size(), name) ==
              0) {
        return &s;
      }
    }
    return nullptr;
  };

  const std::vector<double> baseline = IndustryBaseline();
  std::map<std::string, double> baseline_map;
  for (size_t c = 0; c < categories; ++c) {
    baseline_map[IndustryNames()[c]] = baseline[c];
  }
  for (std::string_view tag : {"mock", "real"}) {
    const std::string prefix = std::string(tag) == "real" ? "" : "mock_";
    if (const ComputationSummary* s = first_released(tag, "/category")) {
      std::map<std::string, double> observed;
      for (size_t c = 0; c < categories; ++c) {
        observed[IndustryNames()[c]] = s->aggregate[c];
      }
      auto ratios = stats::RepresentationRatio(observed, baseline_map);
      if (ratios.ok()) {
        report.metrics[prefix + "technology_ratio"] =
            ratios->at(IndustryNames()[kTechnologyIndex]);
        if (prefix.empty()) {
          for (size_t c = 0; c < categories; ++c) {
            const std::string& name = IndustryNames()[c];
            report.categories.push_back(
                {name, observed[name], baseline[c], ratios->at(name)});
          }
        }
      }
    }
    if (const ComputationSummary* s = first_released(tag, "/gini")) {
      report.metrics[prefix + "dp_gini"] = s->aggregate.front();
    }
    if (const ComputationSummary* s = first_released(tag, "/top_decile")) {
      report.metrics[prefix + "dp_top_decile_share"] = s->aggregate.front();
    }
  }
  if (auto g = reduce::Gini(corpus.video_counts); g.ok()) {
    report.metrics["true_gini"] = *g;
  }
  if (auto t = reduce::TopDecileShare(corpus.video_counts); t.ok()) {
    report.metrics["true_top_decile_share"] = *t;
  }
  AuditCorpusOptions uniform = cfg.data.audit;
  uniform.uniform_videos = true;
  if (auto t = reduce::TopDecileShare(
          GenerateAuditCorpus(cfg.seed, uniform).video_counts);
      t.ok()) {
    report.metrics["uniform_top_decile_share"] = *t;
  }
  size_t answered = 0;
  size_t unanswered = 0;
  for (const ComputationSummary& s : report.computations) {
    if (s.label.rfind("real", 0) != 0) continue;
    (s.phase == Phase::kReleased ? answered : unanswered) += 1;
  }
  report.metrics["real_queries_answered"] = static_cast<double>(answered);
  report.metrics["real_queries_unanswered"] = static_cast<double>(unanswered);
  report.metrics["budget_total"] = cfg.data.budget_total;
  report.metrics["budget_spent"] =
      world.cluster->light(real_id).ledger().spent();
  report.metrics["real_share_submits"] = static_cast<double>(
      world.cluster->share_sends().count(real_id)
          ? world.cluster->share_sends().at(real_id)
          : 0);
  report.metrics["impressions"] =
      static_cast<double>(corpus.impressions.size());
  return ScenarioRun{std::move(report), std::move(world.cluster)};
}

// --- custom ----------------------------------------------------------------

absl::StatusOr<ScenarioRun> RunCustom(const ScenarioConfig& cfg) {
  const std::vector<bool> dropped = DropoutFor(cfg, cfg.n_light);
  std::string policy_text = "require_min_participants 1\n";
  std::vector<runtime::LightNodeOptions> lights;
  for (uint32_t i = 0; i < cfg.n_light; ++i) {
    Rng rng(MixSeed(cfg.seed, kCustomStream + i));
    const uint64_t rows = rng.Between(cfg.data.rows_min, cfg.data.rows_max);
    std::vector<std::vector<double>> data;
    for (uint64_t r = 0; r < rows; ++r) {
      data.push_back({1.0 + 98.0 * rng.UniformOpen01()});
    }
    lights.push_back(LightOptions(
        cfg, policy_text,
        *mapper::LocalDataset::Create({"value"}, std::move(data),
                                      mapper::Provenance::kReal),
        !dropped[i], i));
  }
  PMSR_ASSIGN_OR_RETURN(World world, BuildWorld(cfg, std::move(lights)));

  for (uint32_t c = 0; c < cfg.data.computations; ++c) {
    const Tick at = world.rng.Below(4);
    ComputationProposal p = BaseProposal(cfg, world, at);
    if (world.rng.Bernoulli(0.5)) {
      for (NodeId n : world.lights) {
        if (world.rng.Bernoulli(0.7)) p.targets.push_back(n);
      }
      if (p.targets.empty()) p.targets.push_back(world.lights.front());
    }
    p.map_spec.field = "value";
    p.map_spec.bounds = std::make_pair(0.0, 100.0);
    switch (c % 3) {
      case 0:
        p.map_spec.fn = MapFn::kMeanOf;
        p.output_schema.fields = {{"value_mean", FieldKind::kFixed64, 0, {}}};
        p.reduce_spec.fn = ReduceFn::kMean;
        break;
      case 1:
        p.map_spec.fn = MapFn::kSumOf;
        p.output_schema.fields = {{"value_sum", FieldKind::kFixed64, 0, {}}};
        p.reduce_spec.fn = ReduceFn::kSum;
        break;
      default:
        p.map_spec.fn = MapFn::kHistogramOf;
        p.map_spec.bin_edges = {0, 25, 50, 75, 100};
        p.output_schema.fields = {
            {"value_histogram", FieldKind::kHistogram, 0, p.map_spec.bin_edges}};
        p.reduce_spec.fn = ReduceFn::kHistogramMerge;
        break;
    }
    PMSR_RETURN_IF_ERROR(Issue(world, std::move(p), at, StrCat("c", c)));
  }
  world.cluster->Run(kMaxTick);
  ScenarioReport report = Finish(cfg, world);
  CheckAgainstOracle(cfg, world, report);
  return ScenarioRun{std::move(report), std::move(world.cluster)};
}

}  // namespace

absl::Status ScenarioConfig::Validate() const {
  if (name != "sleep_stats" && name != "ensemble" && name != "audit" &&
      name != "custom") {
    return Invalid(StrCat("name: unknown scenario ", name));
  }
  if (threat_model.kind == ThreatKind::kTEEStub) {
    return MakeError(ErrorCode::kNotImplemented, "TEE backend");
  }
  if (threat_model.kind == ThreatKind::kShamirThreshold) {
    if (threat_model.threshold < 2 ||
        threat_model.threshold > threat_model.parties ||
        threat_model.parties > 255) {
      return Invalid("threat_model: shamir needs 2 <= t <= n <= 255");
    }
  } else if (threat_model.threshold != 0 || threat_model.parties != 0) {
    return Invalid("threat_model: t and n apply to shamir only");
  }
  if (n_heavy < threat_model.QuorumSize()) {
    return Invalid(StrCat("n_heavy: ", threat_model.ToString(), " needs ",
                          threat_model.QuorumSize(), " heavy nodes"));
  }
  if (name != "audit" && n_light < 1) return Invalid("n_light: must be >= 1");
  if (min_participants < 1) return Invalid("min_participants: must be >= 1");
  if (deadline_ticks < 1) return Invalid("deadline_ticks: must be >= 1");
  if (!(dropout_rate >= 0.0 && dropout_rate <= 1.0)) {
    return Invalid("dropout: must be in [0, 1]");
  }
  PMSR_RETURN_IF_ERROR(network.Validate());
  if (he_bits < reduce::kMinHEBits) {
    return Invalid(StrCat("he_bits: must be >= ", reduce::kMinHEBits));
  }
  if (epsilon.has_value() && !(std::isfinite(*epsilon) && *epsilon > 0)) {
    return Invalid("epsilon: must be > 0");
  }
  if (ms_per_tick.has_value() &&
      !(std::isfinite(*ms_per_tick) && *ms_per_tick > 0)) {
    return Invalid("ms_per_tick: must be > 0");
  }
  if (threat_model.kind == ThreatKind::kPlaintextDP && name != "audit" &&
      !epsilon.has_value()) {
    return Invalid("epsilon: plaintext_dp requires an epsilon");
  }
  if (name == "sleep_stats" && data.days < 1) {
    return Invalid("days: must be >= 1");
  }
  if (name == "ensemble") {
    if (data.choices < 2) return Invalid("choices: must be >= 2");
    if (data.choices > 65535) return Invalid("choices: too many");
    if (data.questions < 1) return Invalid("questions: must be >= 1");
    if (data.weights.empty() || data.strengths.empty()) {
      return Invalid("weights: must be non-empty");
    }
    for (double w : data.weights) {
      if (!reduce::QuantizeWeight(w).ok()) return Invalid("weights: range");
    }
  }
  if (name == "audit") {
    if (!(data.budget_total > 0)) return Invalid("budget_total: must be > 0");
    if (!(data.query_epsilon > 0)) return Invalid("query_epsilon: must be > 0");
    if (data.audit_rounds < 1) return Invalid("audit_rounds: must be >= 1");
    if (data.audit.videos < 1) return Invalid("videos: must be >= 1");
    if (!(data.audit.pareto_alpha > 0)) return Invalid("pareto_alpha: > 0");
    const double tech = IndustryBaseline()[kTechnologyIndex];
    if (!(data.audit.tech_factor > 0) || data.audit.tech_factor * tech >= 1) {
      return Invalid("tech_factor: out of range");
    }
  }
  if (name == "custom") {
    if (data.computations < 1) return Invalid("computations: must be >= 1");
    if (data.rows_min < 1 || data.rows_min > data.rows_max) {
      return Invalid("rows: need 1 <= rows_min <= rows_max");
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<ScenarioConfig> DefaultConfig(std::string_view name) {
  ScenarioConfig cfg;
  cfg.name = std::string(name);
  if (name == "sleep_stats") return cfg;
  if (name == "ensemble") {
    cfg.n_light = 6;
    cfg.n_heavy = 3;
    cfg.min_participants = 5;
    cfg.deadline_ticks = 20;
    return cfg;
  }
  if (name == "audit") {
    cfg.n_light = 2;
    cfg.n_heavy = 1;
    cfg.threat_model = proposal::ThreatModel::PlaintextDP();
    cfg.min_participants = 1;
    cfg.deadline_ticks = 10;
    return cfg;
  }
  if (name == "custom") {
    cfg.n_light = 10;
    cfg.n_heavy = 3;
    cfg.min_participants = 2;
    cfg.deadline_ticks = 20;
    return cfg;
  }
  return Invalid(StrCat("name: unknown scenario ", name));
}

ScenarioConfig InjectDropout(ScenarioConfig cfg, double rate,
                             std::optional<uint64_t> seed) {
  cfg.dropout_rate = rate;
  if (seed.has_value()) cfg.dropout_seed = seed;
  return cfg;
}

absl::StatusOr<ScenarioRun> RunScenarioDetailed(const ScenarioConfig& cfg) {
  PMSR_RETURN_IF_ERROR(cfg.Validate());
  if (cfg.name == "sleep_stats") return RunSleepStats(cfg);
  if (cfg.name == "ensemble") return RunEnsemble(cfg);
  if (cfg.name == "audit") return RunAudit(cfg);
  return RunCustom(cfg);
}

absl::StatusOr<ScenarioReport> RunScenario(const ScenarioConfig& cfg) {
  PMSR_ASSIGN_OR_RETURN(ScenarioRun run, RunScenarioDetailed(cfg));
  return std::move(run.report);
}

absl::StatusOr<std::vector<double>> OracleAggregate(
    const ComputationProposal& proposal,
    const std::vector<const mapper::LocalDataset*>& contributor_data,
    const std::vector<size_t>& weight_index) {
  if (contributor_data.size() != weight_index.size()) {
    return MakeError(ErrorCode::kDimensionMismatch, "one weight per dataset");
  }
  ComputationProposal exact = proposal;
  exact.epsilon.reset();
  const bool gac = proposal.reduce_spec.fn == ReduceFn::kGacEnsemble;
  std::vector<uint64_t> sum(proposal.output_schema.Width(), 0);
  Rng unused(0);
  for (size_t i = 0; i < contributor_data.size(); ++i) {
    PMSR_ASSIGN_OR_RETURN(mapper::PrivateMapResult r,
                          mapper::RunPrivateMap(*contributor_data[i], exact,
                                                unused));
    int64_t weight = 1;
    if (gac) {
      if (weight_index[i] >= proposal.reduce_spec.weights.size()) {
        return MakeError(ErrorCode::kDimensionMismatch, "weight index");
      }
      PMSR_ASSIGN_OR_RETURN(
          weight,
          reduce::QuantizeWeight(proposal.reduce_spec.weights[weight_index[i]]));
    }
    const std::vector<mapper::FixedPoint> flat = r.output.Flatten();
    for (size_t e = 0; e < flat.size() && e < sum.size(); ++e) {
      sum[e] += static_cast<uint64_t>(weight) * flat[e].raw;
    }
  }
  reduce::Aggregate aggregate;
  for (uint64_t v : sum) aggregate.scaled.push_back(static_cast<int64_t>(v));
  aggregate.participants = static_cast<uint32_t>(contributor_data.size());
  if (gac) aggregate.scale *= static_cast<double>(reduce::kGacWeightScale);
  return reduce::ApplyReduceFunction(proposal.reduce_spec,
                                     proposal.reduce_post, aggregate);
}

}  // namespace pmsr::sim
