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
#include <gtest/gtest.h>

#include "pmsr/common/status.h"
#include "pmsr/policy/policy.h"
#include "test_util.h"

namespace pmsr::policy {
namespace {

using proposal::ComputationProposal;
using proposal::ThreatKind;
using proposal::ThreatModel;

ComputationProposal Sample() {
  return pmsr::testing::SampleProposal(proposal::KeyPairFromSeed(1));
}

const BudgetLedger kNoBudget(0.0);

TEST(EvaluateTest, MinParticipantsSatisfied) {
  PrivacyPolicy policy{{RequireMinParticipants{100}}};
  EXPECT_EQ(Evaluate(policy, Sample(), kNoBudget), Decision::Accept());
}

TEST(EvaluateTest, MinParticipantsUnmet) {
  PrivacyPolicy policy{{RequireMinParticipants{600}}};
  EXPECT_EQ(Evaluate(policy, Sample(), kNoBudget),
            Decision::Reject("RequireMinParticipants"));
}

TEST(EvaluateTest, EmptyPolicyAcceptsAnything) {
  EXPECT_EQ(Evaluate(PrivacyPolicy{}, Sample(), kNoBudget), Decision::Accept());
}

TEST(EvaluateTest, ThreatModelRejectNamesRule) {
  PrivacyPolicy policy{{RequireThreatModel{{{ThreatKind::kShamirThreshold}}}}};
  ComputationProposal p = Sample();
  p.threat_model = ThreatModel::PlaintextDP();
  EXPECT_EQ(Evaluate(policy, p, kNoBudget),
            Decision::Reject("RequireThreatModel"));
}

// Reference truth table for a threat pattern against a threat model.
bool ReferenceMatch(const ThreatPattern& pattern, const ThreatModel& model) {
  if (pattern.kind != model.kind) return false;
  if (!pattern.full_threshold_only) return true;
  return model.threshold == model.parties;
}

TEST(EvaluateTest, ExhaustiveRuleByProposalMatrix) {
  const std::vector<ThreatModel> models = {
      ThreatModel::SemiHonest3PC(), ThreatModel::Shamir(2, 3),
      ThreatModel::Shamir(3, 3),    ThreatModel::AdditiveHE(),
      ThreatModel::PlaintextDP(),   ThreatModel::TEEStub()};
  std::vector<ThreatPattern> patterns;
  for (int k = 0; k < proposal::kNumThreatKinds; ++k) {
    patterns.push_back({static_cast<ThreatKind>(k), false});
    patterns.push_back({static_cast<ThreatKind>(k), true});
  }
  const std::vector<uint32_t> mins = {1, 499, 500, 501};
  const std::vector<std::string> identities = {"a@trusted.org", "a@else.org"};
  // Every subset of up to two patterns, with and without each other rule.
  for (size_t mask = 0; mask < (size_t{1} << 4); ++mask) {
    for (size_t pa = 0; pa < patterns.size(); ++pa) {
      for (const ThreatModel& model : models) {
        for (uint32_t k : mins) {
          for (const std::string& who : identities) {
            PrivacyPolicy policy;
            bool expect_accept = true;
            std::string expect_reason;
            auto add = [&](Rule rule, bool passes) {
              policy.rules.push_back(rule);
              if (expect_accept && !passes) {
                expect_accept = false;
                expect_reason = std::string(RuleName(rule));
              }
            };
            ComputationProposal p = Sample();
            p.threat_model = model;
            if (mask & 1) add(RequireMinParticipants{k}, 500 >= k);
            if (mask & 2) {
              add(RequireThreatModel{{patterns[pa]}},
                  ReferenceMatch(patterns[pa], model));
            }
            if (mask & 4) {
              add(RequireProposerSuffix{"@trusted.org"},
                  who == "a@trusted.org");
            }
            if (mask & 8) add(RequireManualApproval{}, true);
            const Decision d = Evaluate(policy, p, kNoBudget, who);
            if (!expect_accept) {
              EXPECT_EQ(d, Decision::Reject(expect_reason));
            } else if (mask & 8) {
              EXPECT_EQ(d, Decision::NeedsApproval());
            } else {
              EXPECT_EQ(d, Decision::Accept());
            }
          }
        }
      }
    }
  }
}

TEST(EvaluateTest, AllowFunctionsAndBlockedFields) {
  ComputationProposal p = Sample();
  EXPECT_EQ(Evaluate({{AllowFunctions{{"mean"}}}}, p, kNoBudget),
            Decision::Accept());
  EXPECT_EQ(Evaluate({{AllowFunctions{{"sum", "count"}}}}, p, kNoBudget),
            Decision::Reject("AllowFunctions"));
  EXPECT_EQ(Evaluate({{BlockOutputFields{{"mean"}}}}, p, kNoBudget),
            Decision::Reject("BlockOutputFields"));
}

TEST(EvaluateTest, BudgetRuleNeedsAffordableEpsilon) {
  ComputationProposal p = Sample();
  PrivacyPolicy policy{{DPBudget{1.0}}};
  BudgetLedger ledger(1.0);
  EXPECT_EQ(Evaluate(policy, p, ledger), Decision::Reject("DPBudget"));
  p.epsilon = 0.4;
  EXPECT_EQ(Evaluate(policy, p, ledger), Decision::Accept());
  ASSERT_TRUE(Charge(ledger, 0.7).ok());
  EXPECT_EQ(Evaluate(policy, p, ledger), Decision::Reject("DPBudget"));
}

TEST(ApproveTest, StateMachine) {
  ApprovalTicket yes(Decision::NeedsApproval());
  EXPECT_EQ(*yes.Approve(true), Decision::Accept());
  EXPECT_TRUE(HasErrorCode(yes.Approve(true).status(), ErrorCode::kNotPending));

  ApprovalTicket no(Decision::NeedsApproval());
  EXPECT_EQ(*no.Approve(false), Decision::Reject("ManualDenial"));
  EXPECT_TRUE(HasErrorCode(no.Approve(false).status(), ErrorCode::kNotPending));

  for (const Decision& d : {Decision::Accept(), Decision::Reject("x")}) {
    ApprovalTicket none(d);
    EXPECT_FALSE(none.pending());
    EXPECT_TRUE(
        HasErrorCode(none.Approve(true).status(), ErrorCode::kNotPending));
  }
}

TEST(ChargeTest, Basic) {
  BudgetLedger ledger(1.0);
  ASSERT_TRUE(Charge(ledger, 0.3).ok());
  EXPECT_DOUBLE_EQ(ledger.spent(), 0.3);
}

TEST(ChargeTest, Boundary) {
  BudgetLedger ledger(1.0);
  ASSERT_TRUE(Charge(ledger, 0.9).ok());
  EXPECT_TRUE(HasErrorCode(Charge(ledger, 0.2), ErrorCode::kBudgetExhausted));
  EXPECT_DOUBLE_EQ(ledger.spent(), 0.9);
}

TEST(ChargeTest, InvalidEpsilon) {
  BudgetLedger ledger(1.0);
  EXPECT_TRUE(HasErrorCode(Charge(ledger, 0.0), ErrorCode::kInvalidEpsilon));
  EXPECT_TRUE(HasErrorCode(Charge(ledger, -1.0), ErrorCode::kInvalidEpsilon));
}

TEST(ChargeTest, ReplayOracle) {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    BudgetLedger ledger(2.0);
    double accepted = 0;
    for (int i = 0; i < 30; ++i) {
      const double eps = 0.01 + 0.3 * rng.Uniform01();
      const double before = ledger.spent();
      if (Charge(ledger, eps).ok()) {
        accepted += eps;
      } else {
        EXPECT_EQ(ledger.spent(), before);
      }
      EXPECT_LE(ledger.spent(), ledger.total());
    }
    EXPECT_NEAR(ledger.spent(), accepted, 1e-12);
  }
}

TEST(ParsePolicyTest, RoundTrip) {
  const std::string text =
      "require_min_participants 100\n"
      "require_threat_model shamir,additive_he\n"
      "require_proposer_suffix @trusted-domain.org\n"
      "allow_functions mean,count,gini\n"
      "block_output_fields email,name\n"
      "manual_approval\n"
      "dp_budget 2\n";
  auto policy = ParsePolicy(text);
  ASSERT_TRUE(policy.ok()) << policy.status();
  EXPECT_EQ(policy->rules.size(), 7u);
  EXPECT_EQ(policy->BudgetTotal(), std::optional<double>(2.0));
  auto again = ParsePolicy(FormatPolicy(*policy));
  ASSERT_TRUE(again.ok());
  EXPECT_EQ(FormatPolicy(*again), FormatPolicy(*policy));
}

TEST(ParsePolicyTest, ErrorsCarryLineNumbers) {
  for (const char* bad :
       {"require_min_participants 0\n", "require_threat_model martian\n",
        "frobnicate\n"}) {
    absl::Status s = ParsePolicy(bad).status();
    EXPECT_TRUE(HasErrorCode(s, ErrorCode::kParseError)) << bad;
    EXPECT_NE(std::string(s.message()).find("line"), std::string::npos);
  }
}

TEST(ParsePolicyTest, WholePolicyChecks) {
  for (const char* bad : {"dp_budget -1\n", "dp_budget 1\ndp_budget 2\n"}) {
    EXPECT_TRUE(
        HasErrorCode(ParsePolicy(bad).status(), ErrorCode::kParseError))
        << bad;
  }
}

TEST(ParsePolicyTest, DishonestMajorityMeansHeOrFullShamir) {
  auto policy = ParsePolicy("require_threat_model dishonest_majority\n");
  ASSERT_TRUE(policy.ok());
  ComputationProposal p = Sample();
  p.threat_model = ThreatModel::Shamir(3, 3);
  EXPECT_EQ(Evaluate(*policy, p, kNoBudget), Decision::Accept());
  p.threat_model = ThreatModel::Shamir(2, 3);
  EXPECT_EQ(Evaluate(*policy, p, kNoBudget),
            Decision::Reject("RequireThreatModel"));
  p.threat_model = ThreatModel::AdditiveHE();
  EXPECT_EQ(Evaluate(*policy, p, kNoBudget), Decision::Accept());
}

}  // namespace
}  // namespace pmsr::policy
