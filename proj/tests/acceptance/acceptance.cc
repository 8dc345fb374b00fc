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
// Acceptance driver: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pmsr/common/random.h"
#include "pmsr/common/status.h"
#include "pmsr/common/strings.h"
#include "pmsr/mapper/dataset.h"
#include "pmsr/mapper/map_functions.h"
#include "pmsr/policy/policy.h"
#include "pmsr/proposal/signing.h"
#include "pmsr/reduce/additive.h"
#include "pmsr/reduce/functions.h"
#include "pmsr/reduce/paillier.h"
#include "pmsr/reduce/shamir.h"
#include "pmsr/runtime/cluster.h"
#include "pmsr/sim/generators.h"
#include "pmsr/sim/scenario.h"

namespace pmsr {
namespace {

using u128 = unsigned __int128;

// Collects failed checks for one criterion.
struct Checker {
  std::vector<std::string> failures;
  std::string detail;

  bool Expect(bool ok, const std::string& what) {
    if (!ok && failures.size() < 5) failures.push_back(what);
    if (!ok && failures.size() == 5) failures.push_back("...");
    return ok;
  }
};

struct Criterion {
  int number;
  std::string name;
  double budget_seconds;
  std::function<void(Checker&)> body;
};

// --- 1 -------------------------------------------------------------------

constexpr int kExactnessValues = 10000;

void AdditiveExactness(Checker& c) {
  Rng rng(101);
  std::array<reduce::AdditiveShare, 3> acc = reduce::ShareAdditive(0, rng);
  u128 oracle = 0;
  int single_ok = 0;
  for (int i = 0; i < kExactnessValues; ++i) {
    const uint64_t v = rng.NextU64();
    oracle += v;
    const auto shares = reduce::ShareAdditive(v, rng);
    auto back = reduce::ReconstructAdditive(shares);
    single_ok += back.ok() && *back == v;
    for (int p = 0; p < 3; ++p) {
      acc[p] = *reduce::AddSharesAdditive(acc[p], shares[p]);
    }
  }
  c.Expect(single_ok == kExactnessValues, "additive reconstruct mismatch");
  auto folded = reduce::ReconstructAdditive(acc);
  c.Expect(folded.ok() && *folded == static_cast<uint64_t>(oracle),
           "additive folded sum != oracle mod 2^64");
}

void ShamirExactness(Checker& c) {
  Rng rng(102);
  constexpr uint32_t kT = 2;
  constexpr uint32_t kN = 3;
  std::vector<reduce::ShamirShare> acc = *reduce::ShareShamir(0, kT, kN, rng);
  u128 oracle = 0;
  int single_ok = 0;
  for (int i = 0; i < kExactnessValues; ++i) {
    const uint64_t v = rng.Below(reduce::kMersenne61);
    oracle += v;
    const auto shares = *reduce::ShareShamir(v, kT, kN, rng);
    auto back = reduce::ReconstructShamir(shares, kT);
    single_ok += back.ok() && *back == v;
    for (uint32_t p = 0; p < kN; ++p) {
      acc[p] = *reduce::AddSharesShamir(acc[p], shares[p]);
    }
  }
  c.Expect(single_ok == kExactnessValues, "shamir reconstruct mismatch");
  const uint64_t expected = static_cast<uint64_t>(oracle % reduce::kMersenne61);
  for (uint32_t skip = 0; skip < kN; ++skip) {
    std::vector<reduce::ShamirShare> subset;
    for (uint32_t p = 0; p < kN; ++p) {
      if (p != skip) subset.push_back(acc[p]);
    }
    auto folded = reduce::ReconstructShamir(subset, kT);
    c.Expect(folded.ok() && *folded == expected,
             "shamir folded sum != oracle mod 2^61-1");
  }
}

void PaillierExactness(Checker& c) {
  Rng rng(103);
  auto key = reduce::HeKeygen(1024, rng);
  if (!c.Expect(key.ok(), "paillier keygen failed")) return;
  const reduce::HEPublicKey& pub = key->pub;
  auto acc = reduce::HeEncrypt(pub, 0, rng);
  mpz_class oracle = 0;
  int single_ok = 0;
  Bytes buf(128);
  for (int i = 0; i < kExactnessValues; ++i) {
    for (uint8_t& b : buf) b = static_cast<uint8_t>(rng.NextU64());
    const mpz_class v = reduce::MpzFromBytes(buf) % pub.n;
    oracle += v;
    auto ct = reduce::HeEncrypt(pub, v, rng);
    if (!c.Expect(ct.ok(), "paillier encrypt failed")) return;
    auto back = reduce::HeDecrypt(*key, *ct);
    single_ok += back.ok() && *back == v;
    acc = reduce::HeAdd(pub, *acc, *ct);
  }
  c.Expect(single_ok == kExactnessValues, "paillier decrypt mismatch");
  mpz_class expected = oracle % pub.n;
  auto folded = reduce::HeDecrypt(*key, *acc);
  c.Expect(folded.ok() && *folded == expected,
           "paillier folded sum != oracle mod n");
}

void Criterion1(Checker& c) {
  AdditiveExactness(c);
  ShamirExactness(c);
  PaillierExactness(c);
  c.detail = StrCat(kExactnessValues, " values per backend");
}

// --- 2 -------------------------------------------------------------------

void Criterion2(Checker& c) {
  constexpr int kSharings = 100000;
  constexpr double kChiSquare99Df100 = 135.8067;
  const reduce::PrimeField f101(101);
  Rng rng(201);
  std::vector<std::vector<int>> counts(3, std::vector<int>(101, 0));
  int subset_ok = 0;
  for (int i = 0; i < kSharings; ++i) {
    const uint64_t secret = rng.Below(101);
    const auto shares = *reduce::ShareShamir(secret, 2, 3, rng, f101);
    for (int p = 0; p < 3; ++p) ++counts[p][shares[p].y];
    for (int a = 0; a < 3; ++a) {
      for (int b = a + 1; b < 3; ++b) {
        const std::vector<reduce::ShamirShare> pair = {shares[a], shares[b]};
        auto back = reduce::ReconstructShamir(pair, 2, f101);
        subset_ok += back.ok() && *back == secret;
      }
    }
  }
  c.Expect(subset_ok == 3 * kSharings, "a 2-subset failed to reconstruct");
  const double expected = kSharings / 101.0;
  std::string chis;
  for (int p = 0; p < 3; ++p) {
    double chi = 0;
    for (int n : counts[p]) chi += (n - expected) * (n - expected) / expected;
    c.Expect(chi < kChiSquare99Df100,
             StrCat("share ", p + 1, " chi-square ", chi, " >= ",
                    kChiSquare99Df100));
    chis += StrCat(p ? "," : "", static_cast<int>(std::lround(chi)));
  }
  c.detail = StrCat(kSharings, " sharings over p=101, chi2=", chis,
                    " (crit 135.8)");
}

// --- 3 -------------------------------------------------------------------

void Criterion3(Checker& c) {
  sim::ScenarioConfig cfg = *sim::DefaultConfig("sleep_stats");
  cfg.n_light = 1000;
  cfg.n_heavy = 50;
  cfg.min_participants = 500;
  cfg.threat_model = proposal::ThreatModel::SemiHonest3PC();
  auto report = sim::RunScenario(cfg);
  if (!c.Expect(report.ok(), "sleep_stats failed to run")) return;
  const sim::ComputationSummary& s = report->computations.front();
  c.Expect(s.phase == runtime::Phase::kReleased, "baseline not Released");
  double total = 0;
  for (NodeId node : s.contributors) {
    const auto scores =
        sim::SleepScores(cfg.seed, static_cast<uint32_t>(node), cfg.data.days);
    double sum = 0;
    for (double v : scores) sum += v;
    total += sum / static_cast<double>(scores.size());
  }
  const double n = static_cast<double>(s.contributors.size());
  const double err = s.aggregate.empty()
                         ? HUGE_VAL
                         : std::fabs(s.aggregate.front() - total / n);
  const double bound = std::ldexp(1.0, -16) * (1 + 1 / n);
  c.Expect(err <= bound, StrCat("mean error ", err, " > ", bound));
  c.Expect(report->invariant_violations.empty(), "invariant violation");

  auto dropped = sim::RunScenario(sim::InjectDropout(cfg, 0.6));
  if (!c.Expect(dropped.ok(), "dropout run failed")) return;
  const sim::ComputationSummary& d = dropped->computations.front();
  c.Expect(dropped->metrics.at("responders") < 500, "dropout left >= 500");
  c.Expect(d.phase == runtime::Phase::kAborted, "dropout run not Aborted");
  c.Expect(d.abort_reason == runtime::kInsufficientParticipants,
           "wrong abort reason " + d.abort_reason);
  c.Expect(d.aggregate.empty() && dropped->released() == 0,
           "bytes released on abort");
  c.detail = StrCat("participants=", s.participants, " |err|=", err,
                    " bound=", bound, "; dropout responders=",
                    dropped->metrics.at("responders"), " -> Aborted");
}

// --- 4 -------------------------------------------------------------------

void Criterion4(Checker& c) {
  sim::ScenarioConfig cfg = *sim::DefaultConfig("ensemble");
  c.Expect(cfg.n_light == 6 && cfg.min_participants == 5,
           "unexpected ensemble defaults");
  auto report = sim::RunScenario(cfg);
  if (!c.Expect(report.ok(), "ensemble failed to run")) return;
  const double q = cfg.data.questions;
  c.Expect(q == 1000, "question count");
  c.Expect(report->released() == 1000, "not every question Released");
  c.Expect(report->metrics.at("decision_matches") == q,
           "secure decision differs from weighted-argmax oracle");
  const double ens = report->metrics.at("ensemble_accuracy");
  const double best = report->metrics.at("best_single_accuracy");
  c.Expect(ens > best, "ensemble does not beat best single model");

  sim::ScenarioConfig four = cfg;
  four.n_light = 4;
  auto small = sim::RunScenario(four);
  if (!c.Expect(small.ok(), "4-model run failed")) return;
  c.Expect(small->aborted() == 1000 && small->released() == 0,
           "4-model run released something");
  c.detail = StrCat("matches=", report->metrics.at("decision_matches"), "/",
                    q, " ensemble=", ens, " best_single=", best,
                    "; 4 models aborted=", small->aborted());
}

// --- 5 -------------------------------------------------------------------

void Criterion5(Checker& c) {
  Rng rng(501);
  for (int t = 0; t < 100; ++t) {
    const size_t rows = 1 + rng.Below(200);
    const size_t cols = 1 + rng.Below(8);
    const double p = rng.Uniform01();
    std::vector<std::vector<bool>> m(rows, std::vector<bool>(cols));
    for (auto& row : m) {
      for (size_t j = 0; j < cols; ++j) row[j] = rng.Bernoulli(p);
    }
    size_t any = 0;
    for (const auto& row : m) {
      any += std::any_of(row.begin(), row.end(), [](bool b) { return b; });
    }
    auto theo = reduce::TheoreticalMax(m);
    if (!c.Expect(theo.ok(), "theo_max error")) continue;
    c.Expect(*theo == static_cast<double>(any) / static_cast<double>(rows),
             StrCat("matrix ", t, " differs from any() oracle"));
    for (size_t j = 0; j < cols; ++j) {
      size_t correct = 0;
      for (const auto& row : m) correct += row[j];
      c.Expect(*theo >= static_cast<double>(correct) / rows,
               StrCat("matrix ", t, " column ", j, " exceeds theo_max"));
    }
  }
  c.detail = "100 random matrices";
}

// --- 6 -------------------------------------------------------------------

double PairwiseGini(const std::vector<double>& x) {
  long double diff = 0;
  long double sum = 0;
  for (double a : x) {
    sum += a;
    for (double b : x) diff += std::fabs(static_cast<long double>(a) - b);
  }
  const long double n = x.size();
  return static_cast<double>(diff / (2 * n * sum));
}

void Criterion6(Checker& c) {
  Rng rng(601);
  double worst = 0;
  for (int t = 0; t < 1000; ++t) {
    std::vector<double> x(1 + rng.Below(100));
    for (double& v : x) v = rng.Uniform01() * 1000;
    auto g = reduce::Gini(x);
    if (!c.Expect(g.ok(), "gini error")) continue;
    worst = std::max(worst, std::fabs(*g - PairwiseGini(x)));
  }
  c.Expect(worst <= 1e-12, StrCat("gini oracle deviation ", worst));

  const std::vector<double> equal(7, 2.5);
  const std::vector<double> two = {0, 1};
  const std::vector<double> three = {1, 2, 3};
  c.Expect(*reduce::Gini(equal) == 0.0, "gini(equal) != 0");
  c.Expect(*reduce::Gini(two) == 0.5, "gini({0,1}) != 0.5");
  c.Expect(std::fabs(*reduce::Gini(three) - 2.0 / 9.0) <= 1e-15,
           "gini({1,2,3}) != 2/9");

  sim::AuditCorpusOptions pareto;
  sim::AuditCorpusOptions uniform;
  uniform.uniform_videos = true;
  const auto pc = sim::GenerateAuditCorpus(42, pareto);
  const auto uc = sim::GenerateAuditCorpus(42, uniform);
  const double pg = *reduce::Gini(pc.video_counts);
  const double pt = *reduce::TopDecileShare(pc.video_counts);
  const double ut = *reduce::TopDecileShare(uc.video_counts);
  c.Expect(std::fabs(pg - 0.68) < 0.08, StrCat("pareto gini ", pg));
  c.Expect(pt > ut, "pareto top-decile share not above uniform");
  c.detail = StrCat("max |gini-oracle|=", worst, "; pareto gini=", pg,
                    " top10=", pt, " vs uniform top10=", ut);
}

// --- 7 -------------------------------------------------------------------

mapper::LocalDataset OneValue(double v) {
  return *mapper::LocalDataset::Create({"score"}, {{v}},
                                       mapper::Provenance::kReal);
}

void Criterion7(Checker& c) {
  constexpr int kSamples = 100000;
  constexpr double kEpsilon = 0.5;
  Rng rng(701);
  double sum = 0;
  double sum_sq = 0;
  for (int i = 0; i < kSamples; ++i) {
    const double x = *mapper::ApplyLaplace(0.0, 1.0, kEpsilon, rng);
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / kSamples;
  const double sd = std::sqrt((sum_sq - kSamples * mean * mean) / (kSamples - 1));
  const double target = std::sqrt(2.0) / kEpsilon;
  c.Expect(std::fabs(sd - target) <= 0.05 * target,
           StrCat("laplace sd ", sd, " vs ", target));

  // A single DP node with budget 1.0 receives eight 0.25-epsilon queries.
  runtime::ClusterOptions opt;
  opt.seed = 702;
  auto cluster = *runtime::Cluster::Create(opt);
  runtime::LightNodeOptions lo;
  lo.policy = *policy::ParsePolicy("dp_budget 1.0\n");
  lo.real_ds = OneValue(40);
  lo.seed = 703;
  const NodeId light =
      *cluster->AddLightNode(proposal::KeyPairFromSeed(704), std::move(lo));
  const NodeId heavy = *cluster->AddHeavyNode(proposal::KeyPairFromSeed(705));
  const proposal::KeyPair keys = proposal::KeyPairFromSeed(706);
  const NodeId proposer = *cluster->AddProposer(keys, "auditor@example.org");

  std::vector<uint64_t> sends_after;
  Rng ids(707);
  for (int q = 0; q < 8; ++q) {
    proposal::ComputationProposal p;
    p.id = proposal::ComputationId::Random(ids);
    p.proposer = keys.public_key;
    p.deadline = cluster->now() + 20;
    p.min_participants = 1;
    p.quorum = {heavy};
    p.threat_model = proposal::ThreatModel::PlaintextDP();
    p.epsilon = 0.25;
    p.map_spec.fn = proposal::MapFn::kMeanOf;
    p.map_spec.field = "score";
    p.map_spec.bounds = std::make_pair(0.0, 100.0);
    p.output_schema.fields = {{"mean", proposal::FieldKind::kFixed64, 0, {}}};
    p.reduce_spec.fn = proposal::ReduceFn::kSum;
    p.reduce_spec.compatibility =
        proposal::SupportedCompatibility(proposal::ReduceFn::kSum);
    auto signed_p = proposal::SignProposal(p, keys);
    if (!c.Expect(signed_p.ok(), "sign failed")) return;
    auto scheduled = cluster->Schedule(cluster->now(), proposer, *signed_p);
    if (!c.Expect(scheduled.ok(), std::string(scheduled.message()))) return;
    cluster->Run(cluster->now() + 60);
    const auto& sends = cluster->share_sends();
    sends_after.push_back(sends.count(light) ? sends.at(light) : 0);
  }
  const std::vector<uint64_t> expected = {1, 2, 3, 4, 4, 4, 4, 4};
  c.Expect(sends_after == expected, "share sends after exhaustion");
  c.Expect(cluster->light(light).ledger().spent() == 1.0,
           "ledger not pinned at total");
  c.Expect(cluster->CheckInvariants().empty(), "invariant violation");
  std::string trail;
  for (uint64_t s : sends_after) trail += StrCat(trail.empty() ? "" : ",", s);
  c.detail = StrCat("laplace sd=", sd, " target=", target,
                    "; cumulative share sends=", trail);
}

// --- 8 -------------------------------------------------------------------

sim::ScenarioConfig RandomScenario(uint64_t seed) {
  Rng rng(MixSeed(seed, 0x4655'0000'0000'0000ULL));
  sim::ScenarioConfig cfg = *sim::DefaultConfig("custom");
  cfg.seed = seed;
  cfg.n_light = static_cast<uint32_t>(rng.Between(2, 60));
  cfg.n_heavy = static_cast<uint32_t>(rng.Between(3, 8));
  cfg.min_participants =
      static_cast<uint32_t>(rng.Between(2, std::max<uint64_t>(2, cfg.n_light)));
  cfg.deadline_ticks = rng.Between(6, 40);
  cfg.reduce_timeout = rng.Between(4, 20);
  cfg.network.latency_min = rng.Between(1, 3);
  cfg.network.latency_max = cfg.network.latency_min + rng.Between(0, 4);
  cfg.network.drop_rate = rng.Bernoulli(0.5) ? rng.Uniform01() * 0.2 : 0.0;
  cfg.network.fanout = static_cast<uint32_t>(rng.Between(1, 6));
  cfg.network.ttl = static_cast<uint32_t>(rng.Between(1, 10));
  cfg.dropout_rate = rng.Bernoulli(0.5) ? rng.Uniform01() * 0.5 : 0.0;
  cfg.data.computations = static_cast<uint32_t>(rng.Between(1, 6));
  cfg.he_bits = 512;
  switch (rng.Below(4)) {
    case 0:
      cfg.threat_model = proposal::ThreatModel::SemiHonest3PC();
      break;
    case 1: {
      const uint32_t n = static_cast<uint32_t>(rng.Between(2, cfg.n_heavy));
      cfg.threat_model = proposal::ThreatModel::Shamir(
          static_cast<uint32_t>(rng.Between(2, n)), n);
      break;
    }
    case 2:
      cfg.threat_model = proposal::ThreatModel::AdditiveHE();
      break;
    default:
      cfg.threat_model = proposal::ThreatModel::PlaintextDP();
      cfg.epsilon = 0.1 + rng.Uniform01();
      break;
  }
  return cfg;
}

void Criterion8(Checker& c) {
  constexpr uint64_t kSeeds = 200;
  size_t computations = 0;
  size_t released = 0;
  size_t aborted = 0;
  size_t inspected = 0;
  for (uint64_t seed = 1; seed <= kSeeds; ++seed) {
    const sim::ScenarioConfig cfg = RandomScenario(seed);
    auto run = sim::RunScenarioDetailed(cfg);
    if (!c.Expect(run.ok(), StrCat("seed ", seed, ": ",
                                   run.ok() ? "" : run.status().ToString()))) {
      continue;
    }
    const sim::ScenarioReport& r = run->report;
    for (const std::string& v : r.invariant_violations) {
      c.Expect(false, StrCat("seed ", seed, ": ", v));
    }
    for (const sim::ComputationSummary& s : r.computations) {
      ++computations;
      const bool terminal = s.phase == runtime::Phase::kReleased ||
                            s.phase == runtime::Phase::kAborted;
      c.Expect(terminal, StrCat("seed ", seed, ": non-terminal outcome"));
      if (s.phase == runtime::Phase::kAborted) {
        ++aborted;
        c.Expect(s.aggregate.empty() && !s.abort_reason.empty(),
                 StrCat("seed ", seed, ": incomplete abort"));
      } else {
        ++released;
        c.Expect(s.participants >= cfg.min_participants,
                 StrCat("seed ", seed, ": release below threshold"));
      }
    }
    const auto& proposer = run->cluster->proposer(
        run->cluster->proposer_ids().front());
    for (const auto& [id, release] : proposer.releases) {
      c.Expect(!proposer.aborts.contains(id),
               StrCat("seed ", seed, ": released and aborted"));
    }
    inspected += run->cluster->disclosure_auditor().inspected();
  }
  c.Expect(released > 0 && aborted > 0, "sweep did not exercise both outcomes");
  c.Expect(inspected > 0, "auditor inspected nothing");
  c.detail = StrCat(kSeeds, " seeds, ", computations, " computations (",
                    released, " released, ", aborted, " aborted), ",
                    inspected, " envelopes audited");
}

// --- 9 -------------------------------------------------------------------

void Criterion9(Checker& c) {
  std::vector<sim::ScenarioConfig> configs;
  for (const char* name : {"sleep_stats", "ensemble", "audit", "custom"}) {
    configs.push_back(*sim::DefaultConfig(name));
  }
  sim::ScenarioConfig lossy = *sim::DefaultConfig("sleep_stats");
  lossy.network.drop_rate = 0.1;
  lossy = sim::InjectDropout(lossy, 0.2, 5);
  configs.push_back(lossy);
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    configs.push_back(RandomScenario(seed));
  }
  for (const sim::ScenarioConfig& cfg : configs) {
    auto a = sim::RunScenario(cfg);
    auto b = sim::RunScenario(cfg);
    if (!c.Expect(a.ok() && b.ok(), cfg.name + " failed to run")) continue;
    c.Expect(a->ToJson() == b->ToJson(), cfg.name + " report differs");
    c.Expect(a->ComputationsCsv() == b->ComputationsCsv() &&
                 a->CategoriesCsv() == b->CategoriesCsv(),
             cfg.name + " tables differ");
    c.Expect(a->trace_hash == b->trace_hash && !a->trace_hash.empty(),
             cfg.name + " trace hash differs");
  }
  c.detail = StrCat(configs.size(), " configurations re-run");
}

int Main() {
  const std::vector<Criterion> criteria = {
      {1, "share-scheme exactness", 30, Criterion1},
      {2, "shamir threshold semantics", 60, Criterion2},
      {3, "sleep-stats scenario", 120, Criterion3},
      {4, "ensemble scenario", 60, Criterion4},
      {5, "theoretical-max property", 5, Criterion5},
      {6, "gini / top-decile", 1e9, Criterion6},
      {7, "dp pipeline", 1e9, Criterion7},
      {8, "protocol invariants fuzz", 600, Criterion8},
      {9, "determinism", 1e9, Criterion9},
  };
  int failed = 0;
  for (const Criterion& cr : criteria) {
    Checker checker;
    const auto start = std::chrono::steady_clock::now();
    cr.body(checker);
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    if (secs > cr.budget_seconds) {
      checker.failures.push_back(
          StrCat("runtime ", secs, " s > ", cr.budget_seconds, " s"));
    }
    const bool pass = checker.failures.empty();
    failed += pass ? 0 : 1;
    std::printf("[%s] %d %s (%.2f s): %s\n", pass ? "PASS" : "FAIL",
                cr.number, cr.name.c_str(), secs, checker.detail.c_str());
    for (const std::string& f : checker.failures) {
      std::printf("       - %s\n", f.c_str());
    }
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

}  // namespace
}  // namespace pmsr

int main() { return pmsr::Main(); }
