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
#include "pmsr/proposal/authoring.h"
#include "pmsr/proposal/schema.h"
#include "pmsr/proposal/serialize.h"
#include "pmsr/proposal/signing.h"
#include "test_util.h"

namespace pmsr::proposal {
namespace {

using mapper::FixedPoint;

class ProposalTest : public ::testing::Test {
 protected:
  KeyPair key_ = KeyPairFromSeed(7);
  ComputationProposal p_ = pmsr::testing::SampleProposal(key_);
};

ComputationProposal RandomProposal(Rng& rng, const KeyPair& key) {
  ComputationProposal p;
  p.id = ComputationId::Random(rng);
  p.deadline = 1 + rng.Below(1000);
  p.min_participants = 1 + static_cast<uint32_t>(rng.Below(1000));
  p.budget = rng.Below(5);
  for (NodeId n = 0; n < 20; ++n) {
    if (rng.Bernoulli(0.3)) p.targets.push_back(n);
  }
  const int variant = static_cast<int>(rng.Below(4));
  switch (variant) {
    case 0:
      p.threat_model = ThreatModel::SemiHonest3PC();
      break;
    case 1: {
      const uint32_t n = 2 + static_cast<uint32_t>(rng.Below(5));
      p.threat_model =
          ThreatModel::Shamir(2 + static_cast<uint32_t>(rng.Below(n - 1)), n);
      break;
    }
    case 2:
      p.threat_model = ThreatModel::AdditiveHE();
      break;
    default:
      p.threat_model = ThreatModel::PlaintextDP();
      p.epsilon = 0.1 + rng.Uniform01();
      break;
  }
  for (size_t i = 0; i < p.threat_model.QuorumSize(); ++i) {
    p.quorum.push_back(static_cast<NodeId>(100 + i));
  }
  if (rng.Bernoulli(0.5)) {
    p.map_spec = {MapFn::kHistogramOf, "v", {0, 1.5, 3}, 0, 0, std::nullopt};
    p.output_schema.fields = {{"h", FieldKind::kHistogram, 0, {0, 1.5, 3}}};
    p.reduce_spec.fn = ReduceFn::kHistogramMerge;
  } else {
    p.map_spec = {MapFn::kRollingMean, "s", {}, 30, 0,
                  std::make_pair(-1.0, 100.0)};
    p.map_post = "clamp(0,100)";
    p.output_schema.fields = {{"m", FieldKind::kFixed64, 0, {}}};
    p.reduce_spec.fn = ReduceFn::kMean;
    p.reduce_post = "clamp(0,50)";
  }
  p.reduce_spec.compatibility = SupportedCompatibility(p.reduce_spec.fn);
  p.proposer = key.public_key;
  return p;
}

TEST_F(ProposalTest, SerializationIsDeterministic) {
  auto a = CanonicalSerialize(p_);
  auto b = CanonicalSerialize(p_);
  ASSERT_TRUE(a.ok());
  ASSERT_TRUE(b.ok());
  EXPECT_EQ(*a, *b);
}

TEST_F(ProposalTest, ChangedFieldChangesBytes) {
  ComputationProposal q = p_;
  q.min_participants += 1;
  EXPECT_NE(*CanonicalSerialize(p_), *CanonicalSerialize(q));
}

TEST_F(ProposalTest, RandomizedRoundTrip) {
  Rng rng(11);
  for (int i = 0; i < 300; ++i) {
    ComputationProposal p = RandomProposal(rng, key_);
    ASSERT_TRUE(p.Validate().ok()) << p.Validate();
    auto bytes = CanonicalSerialize(p);
    ASSERT_TRUE(bytes.ok());
    auto back = DeserializeProposal(*bytes);
    ASSERT_TRUE(back.ok()) << back.status();
    EXPECT_EQ(*back, p);
  }
}

TEST_F(ProposalTest, InvalidProposalIsRejectedWithFieldName) {
  ComputationProposal q = p_;
  q.min_participants = 0;
  absl::Status s = CanonicalSerialize(q).status();
  EXPECT_TRUE(HasErrorCode(s, ErrorCode::kInvalidProposal));
  EXPECT_NE(std::string(s.message()).find("min_participants"),
            std::string::npos);
}

TEST_F(ProposalTest, ShamirThresholdOneIsRejected) {
  ComputationProposal q = p_;
  q.threat_model = ThreatModel::Shamir(1, 3);
  q.reduce_spec.compatibility =
      SupportedCompatibility(q.reduce_spec.fn);
  const absl::Status s = q.Validate();
  EXPECT_TRUE(HasErrorCode(s, ErrorCode::kInvalidProposal));
  EXPECT_NE(std::string(s.message()).find("threat_model"), std::string::npos);
  q.threat_model = ThreatModel::Shamir(2, 3);
  EXPECT_TRUE(q.Validate().ok());
}

TEST_F(ProposalTest, SignThenVerify) {
  auto sp = SignProposal(p_, key_);
  ASSERT_TRUE(sp.ok());
  EXPECT_TRUE(VerifyProposal(*sp));
}

TEST_F(ProposalTest, VerifyWithDifferentKeyFails) {
  auto sp = SignProposal(p_, key_);
  ASSERT_TRUE(sp.ok());
  sp->proposal.proposer = KeyPairFromSeed(8).public_key;
  EXPECT_FALSE(VerifyProposal(*sp));
}

TEST_F(ProposalTest, ZeroedSignatureFails) {
  auto sp = SignProposal(p_, key_);
  ASSERT_TRUE(sp.ok());
  std::fill(sp->signature.begin(), sp->signature.end(), 0);
  EXPECT_FALSE(VerifyProposal(*sp));
}

TEST_F(ProposalTest, BitFlipFuzzOnSerializedBytes) {
  auto sp = SignProposal(p_, key_);
  ASSERT_TRUE(sp.ok());
  const Bytes canonical = *CanonicalSerialize(p_);
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    Bytes flipped = canonical;
    const size_t pos = rng.Below(flipped.size());
    flipped[pos] ^= static_cast<uint8_t>(1u << rng.Below(8));
    EXPECT_FALSE(VerifyBytes(flipped, sp->signature, key_.public_key))
        << "position " << pos;
  }
}

TEST_F(ProposalTest, MutationFuzzAfterSigning) {
  auto sp = SignProposal(p_, key_);
  ASSERT_TRUE(sp.ok());
  Rng rng(9);
  for (int i = 0; i < 200; ++i) {
    SignedProposal m = *sp;
    switch (rng.Below(8)) {
      case 0: m.proposal.deadline += 1 + rng.Below(10); break;
      case 1: m.proposal.min_participants += 1; break;
      case 2: m.proposal.quorum[rng.Below(3)] += 1; break;
      case 3: m.proposal.map_spec.field += "x"; break;
      case 4: m.proposal.id.bytes[rng.Below(16)] ^= 1; break;
      case 5: m.proposal.budget += 1; break;
      case 6: m.proposal.targets.push_back(5); break;
      default: m.proposal.epsilon = 0.5; break;
    }
    EXPECT_FALSE(VerifyProposal(m));
  }
}

TEST_F(ProposalTest, MalformedSignedBytesNeverCrash) {
  auto bytes = EncodeSigned(*SignProposal(p_, key_));
  ASSERT_TRUE(bytes.ok());
  Rng rng(3);
  for (size_t cut = 0; cut < bytes->size(); cut += 7) {
    Bytes truncated(bytes->begin(), bytes->begin() + cut);
    EXPECT_FALSE(DecodeSigned(truncated).ok());
  }
  auto decoded = DecodeSigned(*bytes);
  ASSERT_TRUE(decoded.ok());
  EXPECT_TRUE(VerifyProposal(*decoded));
}

TEST_F(ProposalTest, AuthoringRoundTrip) {
  Rng rng(21);
  for (int i = 0; i < 50; ++i) {
    ComputationProposal p = RandomProposal(rng, key_);
    auto back = ParseProposalText(FormatProposalText(p));
    ASSERT_TRUE(back.ok()) << back.status();
    EXPECT_EQ(*back, p);
  }
}

TEST_F(ProposalTest, AuthoringReportsFieldNames) {
  std::string text = FormatProposalText(p_);
  const std::string needle = "min_participants: 500";
  text.replace(text.find(needle), needle.size(), "min_participants: 0");
  absl::Status s = ParseProposalText(text).status();
  EXPECT_TRUE(HasErrorCode(s, ErrorCode::kInvalidProposal));
  EXPECT_NE(std::string(s.message()).find("min_participants"),
            std::string::npos);
}

OutputValue Fixed(std::string name, size_t n,
                  FieldKind kind = FieldKind::kFixed64) {
  return {std::move(name), kind, std::vector<FixedPoint>(n)};
}

TEST(ValidateOutputTest, MatchingScalar) {
  OutputSchema schema{{{"mean", FieldKind::kFixed64, 0, {}}}};
  MapOutput out{{}, {Fixed("mean", 1)}};
  EXPECT_TRUE(ValidateOutput(out, schema).ok());
}

TEST(ValidateOutputTest, VectorLengthMismatchNamesField) {
  OutputSchema schema{{{"v", FieldKind::kFixed64Vector, 6, {}}}};
  MapOutput out{{}, {Fixed("v", 5, FieldKind::kFixed64Vector)}};
  absl::Status s = ValidateOutput(out, schema);
  EXPECT_TRUE(HasErrorCode(s, ErrorCode::kSchemaViolation));
  EXPECT_NE(std::string(s.message()).find("v"), std::string::npos);
}

TEST(ValidateOutputTest, ExtraFieldIsViolation) {
  OutputSchema schema{{{"mean", FieldKind::kFixed64, 0, {}}}};
  MapOutput out{{}, {Fixed("mean", 1), Fixed("extra", 1)}};
  EXPECT_TRUE(HasErrorCode(ValidateOutput(out, schema),
                           ErrorCode::kSchemaViolation));
}

// Reference validator: same names, kinds, widths in order.
bool ReferenceValid(const MapOutput& out, const OutputSchema& schema) {
  if (out.values.size() != schema.fields.size()) return false;
  for (size_t i = 0; i < out.values.size(); ++i) {
    const auto& v = out.values[i];
    const auto& f = schema.fields[i];
    if (v.name != f.name || v.kind != f.kind ||
        v.elements.size() != f.Width()) {
      return false;
    }
  }
  return true;
}

TEST(ValidateOutputTest, RandomizedAgainstReference) {
  Rng rng(77);
  const std::vector<std::string> names = {"a", "b", "c"};
  for (int trial = 0; trial < 2000; ++trial) {
    OutputSchema schema;
    const size_t nf = 1 + rng.Below(3);
    for (size_t i = 0; i < nf; ++i) {
      SchemaField f;
      f.name = names[i];
      f.kind = static_cast<FieldKind>(rng.Below(4));
      if (f.kind == FieldKind::kFixed64Vector) f.length = 1 + rng.Below(4);
      if (f.kind == FieldKind::kHistogram) f.bin_edges = {0, 1, 2};
      schema.fields.push_back(f);
    }
    MapOutput out;
    for (const SchemaField& f : schema.fields) {
      out.values.push_back({f.name, f.kind,
                            std::vector<FixedPoint>(f.Width())});
    }
    switch (rng.Below(5)) {
      case 0:
        break;
      case 1:
        out.values.back().elements.push_back({});
        break;
      case 2:
        out.values.back().name = "z";
        break;
      case 3:
        out.values.push_back(Fixed("c2", 1));
        break;
      default:
        out.values.pop_back();
        break;
    }
    EXPECT_EQ(ValidateOutput(out, schema).ok(), ReferenceValid(out, schema));
  }
}

}  // namespace
}  // namespace pmsr::proposal
