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
#include "pmsr/policy/policy.h"

#include <charconv>
#include <cmath>
#include <sstream>

#include "pmsr/common/status.h"
#include "pmsr/common/strings.h"

namespace pmsr::policy {
namespace {

using proposal::ThreatKind;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool FunctionAllowed(const std::set<std::string>& names,
                     std::string_view registry_name) {
  if (names.contains(std::string(registry_name))) return true;
  constexpr std::string_view kSuffix = "_of";
  if (registry_name.size() > kSuffix.size() &&
      registry_name.substr(registry_name.size() - kSuffix.size()) == kSuffix) {
    return names.contains(std::string(
        registry_name.substr(0, registry_name.size() - kSuffix.size())));
  }
  return false;
}

// Whether `rule` admits the proposal; manual approval always passes here.
bool Passes(const Rule& rule, const proposal::ComputationProposal& p,
            const BudgetLedger& ledger, std::string_view identity) {
  return std::visit(
      Overloaded{
          [&](const RequireMinParticipants& r) {
            return p.min_participants >= r.k;
          },
          [&](const RequireThreatModel& r) {
            for (const ThreatPattern& pattern : r.allowed) {
              if (pattern.Matches(p.threat_model)) return true;
            }
            return false;
          },
          [&](const RequireProposerSuffix& r) {
            return identity.size() >= r.suffix.size() &&
                   identity.substr(identity.size() - r.suffix.size()) ==
                       r.suffix;
          },
          [&](const AllowFunctions& r) {
            return FunctionAllowed(r.names, MapFnName(p.map_spec.fn)) &&
                   FunctionAllowed(r.names, ReduceFnName(p.reduce_spec.fn));
          },
          [&](const BlockOutputFields& r) {
            for (const auto& field : p.output_schema.fields) {
              if (r.names.contains(field.name)) return false;
            }
            return true;
          },
          [](const RequireManualApproval&) { return true; },
          [&](const DPBudget&) {
            return p.epsilon.has_value() && ledger.CanAfford(*p.epsilon);
          },
      },
      rule);
}

std::vector<std::string> SplitList(std::string_view s) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start <= s.size()) {
    size_t comma = s.find(',', start);
    std::string item(s.substr(start, comma - start));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string JoinSet(const std::set<std::string>& names) {
  std::string out;
  for (const std::string& n : names) {
    if (!out.empty()) out += ",";
    out += n;
  }
  return out;
}

absl::Status BadLine(size_t line, std::string_view why) {
  return MakeError(ErrorCode::kParseError, StrCat("line ", line, ": ", why));
}

}  // namespace

bool ThreatPattern::Matches(const proposal::ThreatModel& model) const {
  if (model.kind != kind) return false;
  if (full_threshold_only && model.threshold != model.parties) return false;
  return true;
}

std::string_view RuleName(const Rule& rule) {
  return std::visit(
      Overloaded{
          [](const RequireMinParticipants&) -> std::string_view {
            return "RequireMinParticipants";
          },
          [](const RequireThreatModel&) -> std::string_view {
            return "RequireThreatModel";
          },
          [](const RequireProposerSuffix&) -> std::string_view {
            return "RequireProposerSuffix";
          },
          [](const AllowFunctions&) -> std::string_view {
            return "AllowFunctions";
          },
          [](const BlockOutputFields&) -> std::string_view {
            return "BlockOutputFields";
          },
          [](const RequireManualApproval&) -> std::string_view {
            return "RequireManualApproval";
          },
          [](const DPBudget&) -> std::string_view { return "DPBudget"; },
      },
      rule);
}

absl::Status PrivacyPolicy::Validate() const {
  int budgets = 0;
  for (const Rule& rule : rules) {
    if (const auto* r = std::get_if<RequireMinParticipants>(&rule)) {
      if (r->k < 1) {
        return MakeError(ErrorCode::kParseError,
                         "require_min_participants needs k >= 1");
      }
    }
    if (const auto* r = std::get_if<DPBudget>(&rule)) {
      ++budgets;
      if (!(r->total_epsilon > 0) || !std::isfinite(r->total_epsilon)) {
        return MakeError(ErrorCode::kParseError, "dp_budget must be > 0");
      }
    }
  }
  if (budgets > 1) {
    return MakeError(ErrorCode::kParseError, "at most one dp_budget rule");
  }
  return absl::OkStatus();
}

std::optional<double> PrivacyPolicy::BudgetTotal() const {
  for (const Rule& rule : rules) {
    if (const auto* r = std::get_if<DPBudget>(&rule)) return r->total_epsilon;
  }
  return std::nullopt;
}

absl::Status Charge(BudgetLedger& ledger, double epsilon) {
  if (!(epsilon > 0) || !std::isfinite(epsilon)) {
    return MakeError(ErrorCode::kInvalidEpsilon, StrCat("epsilon=", epsilon));
  }
  if (!ledger.CanAfford(epsilon)) {
    return MakeError(ErrorCode::kBudgetExhausted,
                     StrCat("spent ", ledger.spent(), " + ", epsilon, " > ",
                            ledger.total()));
  }
  ledger.spent_ += epsilon;
  return absl::OkStatus();
}

std::string Decision::ToString() const {
  switch (kind) {
    case Kind::kAccept:
      return "Accept";
    case Kind::kReject:
      return "Reject(" + reason + ")";
    case Kind::kNeedsApproval:
      return "NeedsApproval";
  }
  return "";
}

Decision Evaluate(const PrivacyPolicy& policy,
                  const proposal::ComputationProposal& proposal,
                  const BudgetLedger& ledger,
                  std::string_view proposer_identity) {
  bool needs_approval = false;
  for (const Rule& rule : policy.rules) {
    if (std::holds_alternative<RequireManualApproval>(rule)) {
      needs_approval = true;
      continue;
    }
    if (!Passes(rule, proposal, ledger, proposer_identity)) {
      return Decision::Reject(std::string(RuleName(rule)));
    }
  }
  return needs_approval ? Decision::NeedsApproval() : Decision::Accept();
}

absl::StatusOr<Decision> ApprovalTicket::Approve(bool verdict) {
  if (!pending_) return MakeError(ErrorCode::kNotPending);
  pending_ = false;
  return verdict ? Decision::Accept() : Decision::Reject("ManualDenial");
}

absl::StatusOr<PrivacyPolicy> ParsePolicy(std::string_view text) {
  PrivacyPolicy policy;
  std::istringstream in{std::string(text)};
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (size_t hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream words(line);
    std::string keyword;
    if (!(words >> keyword)) continue;
    std::string arg;
    words >> arg;
    std::string extra;
    if (words >> extra) return BadLine(line_no, "too many arguments");

    if (keyword == "require_min_participants") {
      uint32_t k = 0;
      auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), k);
      if (ec != std::errc() || ptr != arg.data() + arg.size() || k < 1) {
        return BadLine(line_no, "expected a positive integer");
      }
      policy.rules.push_back(RequireMinParticipants{k});
    } else if (keyword == "require_threat_model") {
      RequireThreatModel rule;
      for (const std::string& name : SplitList(arg)) {
        if (name == "dishonest_majority") {
          rule.allowed.push_back({ThreatKind::kAdditiveHE});
          rule.allowed.push_back({ThreatKind::kShamirThreshold, true});
        } else if (name == "shamir_full") {
          rule.allowed.push_back({ThreatKind::kShamirThreshold, true});
        } else if (auto kind = proposal::ParseThreatKind(name)) {
          rule.allowed.push_back({*kind});
        } else {
          return BadLine(line_no, "unknown threat model " + name);
        }
      }
      if (rule.allowed.empty()) return BadLine(line_no, "empty threat list");
      policy.rules.push_back(std::move(rule));
    } else if (keyword == "require_proposer_suffix") {
      if (arg.empty()) return BadLine(line_no, "missing suffix");
      policy.rules.push_back(RequireProposerSuffix{arg});
    } else if (keyword == "allow_functions") {
      auto names = SplitList(arg);
      if (names.empty()) return BadLine(line_no, "empty function list");
      policy.rules.push_back(AllowFunctions{{names.begin(), names.end()}});
    } else if (keyword == "block_output_fields") {
      auto names = SplitList(arg);
      if (names.empty()) return BadLine(line_no, "empty field list");
      policy.rules.push_back(BlockOutputFields{{names.begin(), names.end()}});
    } else if (keyword == "manual_approval") {
      if (!arg.empty()) return BadLine(line_no, "takes no argument");
      policy.rules.push_back(RequireManualApproval{});
    } else if (keyword == "dp_budget") {
      double total = 0;
      auto [ptr, ec] =
          std::from_chars(arg.data(), arg.data() + arg.size(), total);
      if (ec != std::errc() || ptr != arg.data() + arg.size()) {
        return BadLine(line_no, "expected a number");
      }
      policy.rules.push_back(DPBudget{total});
    } else {
      return BadLine(line_no, "unknown rule " + keyword);
    }
  }
  PMSR_RETURN_IF_ERROR(policy.Validate());
  return policy;
}

std::string FormatPolicy(const PrivacyPolicy& policy) {
  std::ostringstream out;
  for (const Rule& rule : policy.rules) {
    std::visit(
        Overloaded{
            [&](const RequireMinParticipants& r) {
              out << "require_min_participants " << r.k;
            },
            [&](const RequireThreatModel& r) {
              out << "require_threat_model ";
              for (size_t i = 0; i < r.allowed.size(); ++i) {
                if (i > 0) out << ",";
                if (r.allowed[i].full_threshold_only) {
                  out << "shamir_full";
                } else {
                  out << proposal::ThreatKindName(r.allowed[i].kind);
                }
              }
            },
            [&](const RequireProposerSuffix& r) {
              out << "require_proposer_suffix " << r.suffix;
            },
            [&](const AllowFunctions& r) {
              out << "allow_functions " << JoinSet(r.names);
            },
            [&](const BlockOutputFields& r) {
              out << "block_output_fields " << JoinSet(r.names);
            },
            [&](const RequireManualApproval&) { out << "manual_approval"; },
            [&](const DPBudget& r) { out << "dp_budget " << r.total_epsilon; },
        },
        rule);
    out << "\n";
  }
  return out.str();
}

}  // namespace pmsr::policy
