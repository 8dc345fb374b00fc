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
#ifndef PMSR_POLICY_POLICY_H_
#define PMSR_POLICY_POLICY_H_

#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "pmsr/proposal/types.h"

namespace pmsr::policy {

// A threat model a node is willing to accept. `full_threshold_only`
// restricts Shamir to t == n, which is how a dishonest-majority
// requirement is expressed.
struct ThreatPattern {
  proposal::ThreatKind kind;
  bool full_threshold_only = false;

  bool Matches(const proposal::ThreatModel& model) const;
  friend bool operator==(const ThreatPattern&, const ThreatPattern&) = default;
};

struct RequireMinParticipants {
  uint32_t k = 1;
};
struct RequireThreatModel {
  std::vector<ThreatPattern> allowed;
};
struct RequireProposerSuffix {
  std::string suffix;
};
// Matches registry names. Map functions also match their name without the
// "_of" suffix, so "mean" admits mean_of.
struct AllowFunctions {
  std::set<std::string> names;
};
// Denies proposals whose output schema contains any of these field names.
struct BlockOutputFields {
  std::set<std::string> names;
};
struct RequireManualApproval {};
struct DPBudget {
  double total_epsilon = 0;
};

using Rule = std::variant<RequireMinParticipants, RequireThreatModel,
                          RequireProposerSuffix, AllowFunctions,
                          BlockOutputFields, RequireManualApproval, DPBudget>;

// Identifier carried by Reject decisions, e.g. "RequireThreatModel".
std::string_view RuleName(const Rule& rule);

struct PrivacyPolicy {
  std::vector<Rule> rules;

  // At most one DPBudget rule; k >= 1; total_epsilon > 0.
  absl::Status Validate() const;
  // The DPBudget total, if the policy declares one.
  std::optional<double> BudgetTotal() const;
};

class BudgetLedger {
 public:
  explicit BudgetLedger(double total_epsilon) : total_(total_epsilon) {}

  double total() const { return total_; }
  double spent() const { return spent_; }
  double remaining() const { return total_ - spent_; }
  bool CanAfford(double epsilon) const { return spent_ + epsilon <= total_; }

 private:
  friend absl::Status Charge(BudgetLedger& ledger, double epsilon);
  double total_;
  double spent_ = 0;
};

// Adds `epsilon` to the spent budget. BudgetExhausted (ledger unchanged)
// when spent + epsilon would exceed the total; InvalidEpsilon unless
// epsilon > 0.
absl::Status Charge(BudgetLedger& ledger, double epsilon);

struct Decision {
  enum class Kind { kAccept, kReject, kNeedsApproval };
  Kind kind = Kind::kAccept;
  std::string reason;  // rule identifier for kReject

  static Decision Accept() { return {Kind::kAccept, {}}; }
  static Decision Reject(std::string reason) {
    return {Kind::kReject, std::move(reason)};
  }
  static Decision NeedsApproval() { return {Kind::kNeedsApproval, {}}; }

  std::string ToString() const;
  friend bool operator==(const Decision&, const Decision&) = default;
};

// Evaluates the rules in order; the first failing rule rejects. If every
// rule passes and the policy requires manual approval the result is
// NeedsApproval. `proposer_identity` is the identity string registered
// with the proposer's key (used by RequireProposerSuffix).
Decision Evaluate(const PrivacyPolicy& policy,
                  const proposal::ComputationProposal& proposal,
                  const BudgetLedger& ledger,
                  std::string_view proposer_identity = {});

// Holds one outstanding NeedsApproval decision until it is resolved.
class ApprovalTicket {
 public:
  ApprovalTicket() = default;
  explicit ApprovalTicket(const Decision& pending)
      : pending_(pending.kind == Decision::Kind::kNeedsApproval) {}

  bool pending() const { return pending_; }

  // true -> Accept, false -> Reject("ManualDenial"). NotPending if nothing
  // is outstanding, including on a second call.
  absl::StatusOr<Decision> Approve(bool verdict);

 private:
  bool pending_ = false;
};

// One rule per line; blank lines and '#' comments are ignored.
//
//   require_min_participants 100
//   require_threat_model shamir,additive_he
//   require_threat_model dishonest_majority
//   require_proposer_suffix @trusted-domain.org
//   allow_functions mean,count,gini
//   block_output_fields email,name
//   manual_approval
//   dp_budget 2.0
absl::StatusOr<PrivacyPolicy> ParsePolicy(std::string_view text);
std::string FormatPolicy(const PrivacyPolicy& policy);

}  // namespace pmsr::policy

#endif  // PMSR_POLICY_POLICY_H_
