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
#include "commands.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "pmsr/common/bytes.h"
#include "pmsr/common/status.h"
#include "pmsr/common/strings.h"
#include "pmsr/policy/policy.h"
#include "pmsr/proposal/authoring.h"
#include "pmsr/proposal/signing.h"
#include "pmsr/sim/report.h"
#include "pmsr/sim/scenario.h"

namespace pmsr::cli {
namespace {

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return MakeError(ErrorCode::kIoError, StrCat("cannot read ", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string Trim(std::string s) {
  auto space = [](unsigned char c) { return std::isspace(c) != 0; };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), space));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), space).base(), s.end());
  return s;
}

int Fail(const absl::Status& status, std::ostream& err) {
  err << "error: " << std::string(status.message()) << "\n";
  return kExitError;
}

absl::StatusOr<proposal::KeyPair> LoadSecretKey(const std::string& path) {
  PMSR_ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  auto bytes = FromHex(Trim(text));
  if (!bytes || bytes->size() != proposal::kSecretKeySize) {
    return MakeError(ErrorCode::kParseError,
                     StrCat(path, ": expected ", proposal::kSecretKeySize * 2,
                            " hex characters"));
  }
  proposal::KeyPair key;
  key.secret_key = *bytes;
  key.public_key.assign(bytes->end() - proposal::kPublicKeySize, bytes->end());
  return key;
}

// Accepts either an authoring file or a signed binary.
absl::StatusOr<proposal::ComputationProposal> LoadAnyProposal(
    const std::string& path) {
  PMSR_ASSIGN_OR_RETURN(std::string content, ReadFile(path));
  const Bytes raw(content.begin(), content.end());
  if (auto sp = proposal::DecodeSigned(raw); sp.ok()) {
    return sp->proposal;
  }
  return proposal::ParseProposalText(content, true);
}

absl::Status ApplyConfigFile(const std::string& path,
                             sim::ScenarioConfig& cfg) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(path);
  } catch (const YAML::Exception& e) {
    return MakeError(ErrorCode::kParseError, StrCat(path, ": ", e.what()));
  }
  if (!root.IsMap()) {
    return MakeError(ErrorCode::kParseError, StrCat(path, ": expected a map"));
  }
  try {
    for (const auto& kv : root) {
      const std::string key = kv.first.as<std::string>();
      const YAML::Node& v = kv.second;
      if (key == "n_light") {
        cfg.n_light = v.as<uint32_t>();
      } else if (key == "n_heavy") {
        cfg.n_heavy = v.as<uint32_t>();
      } else if (key == "threshold" || key == "min_participants") {
        cfg.min_participants = v.as<uint32_t>();
      } else if (key == "dropout") {
        cfg.dropout_rate = v.as<double>();
      } else if (key == "epsilon") {
        cfg.epsilon = v.as<double>();
      } else if (key == "seed") {
        cfg.seed = v.as<uint64_t>();
      } else if (key == "deadline_ticks") {
        cfg.deadline_ticks = v.as<uint64_t>();
      } else if (key == "reduce_timeout") {
        cfg.reduce_timeout = v.as<uint64_t>();
      } else if (key == "latency_min") {
        cfg.network.latency_min = v.as<uint64_t>();
      } else if (key == "latency_max") {
        cfg.network.latency_max = v.as<uint64_t>();
      } else if (key == "drop_rate") {
        cfg.network.drop_rate = v.as<double>();
      } else if (key == "fanout") {
        cfg.network.fanout = v.as<uint32_t>();
      } else if (key == "ttl") {
        cfg.network.ttl = v.as<uint32_t>();
      } else if (key == "questions") {
        cfg.data.questions = v.as<uint32_t>();
      } else if (key == "days") {
        cfg.data.days = v.as<uint32_t>();
      } else if (key == "ms_per_tick") {
        cfg.ms_per_tick = v.as<double>();
      } else if (key == "weights") {
        cfg.data.weights = v.as<std::vector<double>>();
      } else {
        return MakeError(ErrorCode::kConfigInvalid,
                         StrCat(path, ": unknown key ", key));
      }
    }
  } catch (const YAML::Exception& e) {
    return MakeError(ErrorCode::kParseError, StrCat(path, ": ", e.what()));
  }
  return absl::OkStatus();
}

absl::StatusOr<sim::ScenarioConfig> BuildConfig(const SimArgs& args) {
  PMSR_ASSIGN_OR_RETURN(sim::ScenarioConfig cfg,
                        sim::DefaultConfig(args.scenario));
  if (args.config_path) {
    PMSR_RETURN_IF_ERROR(ApplyConfigFile(*args.config_path, cfg));
  }
  if (args.n_light) cfg.n_light = *args.n_light;
  if (args.n_heavy) cfg.n_heavy = *args.n_heavy;
  if (args.threshold) cfg.min_participants = *args.threshold;
  if (args.dropout) cfg.dropout_rate = *args.dropout;
  if (args.epsilon) cfg.epsilon = *args.epsilon;
  if (args.seed) cfg.seed = *args.seed;
  if (args.questions) cfg.data.questions = *args.questions;
  if (args.ms_per_tick) cfg.ms_per_tick = *args.ms_per_tick;
  if (args.threat_model) {
    auto kind = proposal::ParseThreatKind(*args.threat_model);
    if (!kind) {
      return MakeError(ErrorCode::kConfigInvalid,
                       StrCat("threat_model: unknown ", *args.threat_model));
    }
    cfg.threat_model = proposal::ThreatModel{*kind};
  }
  if (cfg.threat_model.kind == proposal::ThreatKind::kShamirThreshold) {
    const uint32_t n = args.shamir_n.value_or(3);
    cfg.threat_model = proposal::ThreatModel::Shamir(args.shamir_t.value_or(2),
                                                     n);
  } else if (args.shamir_t || args.shamir_n) {
    return MakeError(ErrorCode::kConfigInvalid,
                     "shamir_t: only valid with --threat-model shamir");
  }
  PMSR_RETURN_IF_ERROR(cfg.Validate());
  return cfg;
}

}  // namespace

int CmdKeygen(const KeygenArgs& args, std::ostream& out, std::ostream& err) {
  const proposal::KeyPair key = args.seed
                                    ? proposal::KeyPairFromSeed(*args.seed)
                                    : proposal::GenerateKeyPair();
  const std::string pub = ToHex(key.public_key);
  if (auto s = sim::WriteFileAtomic(args.out_prefix + ".sec",
                                    ToHex(key.secret_key) + "\n");
      !s.ok()) {
    return Fail(s, err);
  }
  if (auto s = sim::WriteFileAtomic(args.out_prefix + ".pub", pub + "\n");
      !s.ok()) {
    return Fail(s, err);
  }
  out << pub << "\n";
  return kExitOk;
}

int CmdPropose(const ProposeArgs& args, std::ostream& out, std::ostream& err) {
  auto text = ReadFile(args.proposal_path);
  if (!text.ok()) return Fail(text.status(), err);
  auto key = LoadSecretKey(args.key_path);
  if (!key.ok()) return Fail(key.status(), err);
  auto parsed = proposal::ParseProposalText(*text, true);
  if (!parsed.ok()) return Fail(parsed.status(), err);
  proposal::ComputationProposal p = *std::move(parsed);
  if (p.proposer.empty()) {
    p.proposer = key->public_key;
  } else if (p.proposer != key->public_key) {
    return Fail(MakeError(ErrorCode::kInvalidProposal,
                          "proposer: does not match the signing key"),
                err);
  }
  auto sp = proposal::SignProposal(p, *key);
  if (!sp.ok()) return Fail(sp.status(), err);
  auto bytes = proposal::EncodeSigned(*sp);
  if (!bytes.ok()) return Fail(bytes.status(), err);
  if (auto s = sim::WriteFileAtomic(
          args.out_path, std::string(bytes->begin(), bytes->end()));
      !s.ok()) {
    return Fail(s, err);
  }
  out << "proposal " << p.id.Hex() << " signed (" << bytes->size()
      << " bytes)\n";
  return kExitOk;
}

int CmdInspect(const InspectArgs& args, std::ostream& out, std::ostream& err) {
  auto content = ReadFile(args.signed_path);
  if (!content.ok()) return Fail(content.status(), err);
  const Bytes raw(content->begin(), content->end());
  auto sp = proposal::DecodeSigned(raw);
  if (!sp.ok()) return Fail(sp.status(), err);
  out << proposal::FormatProposalText(sp->proposal);
  out << "# signature: "
      << (proposal::VerifyProposal(*sp) ? "valid" : "INVALID") << "\n";
  return kExitOk;
}

int CmdPolicyCheck(const PolicyCheckArgs& args, std::ostream& out,
                   std::ostream& err) {
  auto policy_text = ReadFile(args.policy_path);
  if (!policy_text.ok()) return Fail(policy_text.status(), err);
  auto policy = policy::ParsePolicy(*policy_text);
  if (!policy.ok()) return Fail(policy.status(), err);
  auto p = LoadAnyProposal(args.proposal_path);
  if (!p.ok()) return Fail(p.status(), err);
  const policy::BudgetLedger ledger(policy->BudgetTotal().value_or(0.0));
  const policy::Decision d = policy::Evaluate(*policy, *p, ledger,
                                              args.identity);
  out << d.ToString() << "\n";
  switch (d.kind) {
    case policy::Decision::Kind::kAccept:
      return kExitOk;
    case policy::Decision::Kind::kReject:
      return kExitReject;
    case policy::Decision::Kind::kNeedsApproval:
      return kExitNeedsApproval;
  }
  return kExitError;
}

int CmdSim(const SimArgs& args, std::ostream& out, std::ostream& err) {
  auto cfg = BuildConfig(args);
  if (!cfg.ok()) return Fail(cfg.status(), err);
  auto run = sim::RunScenarioDetailed(*cfg);
  if (!run.ok()) return Fail(run.status(), err);
  const std::string dir =
      args.out_dir.empty() ? StrCat("pmsr-out/", args.scenario) : args.out_dir;
  if (auto s = sim::WriteReport(run->report,
                                run->cluster->network().trace_csv(), dir);
      !s.ok()) {
    return Fail(s, err);
  }
  out << run->report.SummaryLine() << "\n";
  for (const std::string& v : run->report.invariant_violations) {
    err << "invariant violation: " << v << "\n";
  }
  return run->report.released() > 0 ? kExitOk : kExitAbortedOnly;
}

int CmdReport(const ReportArgs& args, std::ostream& out, std::ostream& err) {
  const std::string path = (std::filesystem::path(args.dir) / "report.json");
  auto text = ReadFile(path);
  if (!text.ok()) return Fail(text.status(), err);
  const nlohmann::json j = nlohmann::json::parse(*text, nullptr, false);
  if (j.is_discarded() || !j.contains("summary")) {
    return Fail(MakeError(ErrorCode::kParseError, StrCat(path, ": bad report")),
                err);
  }
  const auto& s = j["summary"];
  out << "scenario=" << j.value("scenario", "") << " released="
      << s.value("released", 0) << " aborted=" << s.value("aborted", 0)
      << " mean_latency_ticks="
      << sim::FormatDouble(s.value("mean_latency_ticks", 0.0)) << "\n";
  if (j.contains("latency_ticks") && j["latency_ticks"].is_object()) {
    const auto& l = j["latency_ticks"];
    out << "latency median=" << sim::FormatDouble(l.value("median", 0.0))
        << " p95=" << sim::FormatDouble(l.value("p95", 0.0))
        << " min=" << sim::FormatDouble(l.value("min", 0.0))
        << " max=" << sim::FormatDouble(l.value("max", 0.0)) << "\n";
  }
  if (j.contains("latency_ms")) {
    const auto& l = j["latency_ms"];
    out << "latency_ms mean=" << sim::FormatDouble(l.value("mean", 0.0))
        << " median=" << sim::FormatDouble(l.value("median", 0.0))
        << " p95=" << sim::FormatDouble(l.value("p95", 0.0)) << "\n";
  }
  for (const auto& [name, value] : j["metrics"].items()) {
    out << name << "=" << sim::FormatDouble(value.get<double>()) << "\n";
  }
  out << "trace_sha256=" << j["network"].value("trace_sha256", "") << "\n";
  return kExitOk;
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Private map and secure reduce toolkit", "pmsr"};
  app.require_subcommand(1);

  KeygenArgs keygen;
  auto* k = app.add_subcommand("keygen", "Generate an Ed25519 key pair");
  k->add_option("--out", keygen.out_prefix, "Output path prefix")->required();
  k->add_option("--seed", keygen.seed, "Deterministic key seed");

  ProposeArgs propose;
  auto* p = app.add_subcommand("propose", "Sign a proposal authoring file");
  p->add_option("proposal", propose.proposal_path)->required();
  p->add_option("--key", propose.key_path, "Secret key file")->required();
  p->add_option("--out", propose.out_path, "Signed output file")->required();

  InspectArgs inspect;
  auto* i = app.add_subcommand("inspect", "Dump a signed proposal");
  i->add_option("signed", inspect.signed_path)->required();

  PolicyCheckArgs check;
  auto* c = app.add_subcommand("policy-check",
                               "Evaluate a policy against a proposal");
  c->add_option("policy", check.policy_path)->required();
  c->add_option("proposal", check.proposal_path)->required();
  c->add_option("--identity", check.identity, "Proposer identity");

  SimArgs sim_args;
  auto* s = app.add_subcommand("sim", "Run a simulated deployment");
  s->add_option("scenario", sim_args.scenario,
                "sleep_stats | ensemble | audit | custom")
      ->required();
  s->add_option("--config", sim_args.config_path,
                "YAML scenario overrides (flags take precedence)");
  s->add_option("--n-light", sim_args.n_light, "Light node count");
  s->add_option("--n-heavy", sim_args.n_heavy, "Heavy node count");
  s->add_option("--threshold", sim_args.threshold, "Minimum participants");
  s->add_option("--dropout", sim_args.dropout,
                "Per light node failure probability");
  s->add_option("--epsilon", sim_args.epsilon, "DP budget per proposal");
  s->add_option("--seed", sim_args.seed, "Scenario seed")->envname("PMSR_SEED");
  s->add_option("--threat-model", sim_args.threat_model,
                "semi_honest_3pc | shamir | additive_he | plaintext_dp");
  s->add_option("--shamir-t", sim_args.shamir_t, "Shamir threshold (default 2)");
  s->add_option("--shamir-n", sim_args.shamir_n, "Shamir parties (default 3)");
  s->add_option("--questions", sim_args.questions, "Ensemble question count");
  s->add_option("--ms-per-tick", sim_args.ms_per_tick,
                "Tick length for millisecond latency figures");
  s->add_option("--out", sim_args.out_dir, "Report directory");

  ReportArgs report;
  auto* r = app.add_subcommand("report", "Summarize a report directory");
  r->add_option("dir", report.dir)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (*k) return CmdKeygen(keygen, out, err);
  if (*p) return CmdPropose(propose, out, err);
  if (*i) return CmdInspect(inspect, out, err);
  if (*c) return CmdPolicyCheck(check, out, err);
  if (*s) return CmdSim(sim_args, out, err);
  return CmdReport(report, out, err);
}

}  // namespace pmsr::cli
