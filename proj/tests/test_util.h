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
#ifndef PMSR_TESTS_TEST_UTIL_H_
#define PMSR_TESTS_TEST_UTIL_H_

#include "pmsr/common/random.h"
#include "pmsr/proposal/signing.h"
#include "pmsr/proposal/types.h"

namespace pmsr::testing {

// A valid mean-of-score proposal signed by `key`.
inline proposal::ComputationProposal SampleProposal(
    const proposal::KeyPair& key, uint64_t seed = 1) {
  Rng rng(seed);
  proposal::ComputationProposal p;
  p.id = proposal::ComputationId::Random(rng);
  p.deadline = 40;
  p.min_participants = 500;
  p.quorum = {1000, 1001, 1002};
  p.map_spec.fn = proposal::MapFn::kMeanOf;
  p.map_spec.field = "score";
  p.map_spec.bounds = std::make_pair(0.0, 100.0);
  p.output_schema.fields = {{"mean", proposal::FieldKind::kFixed64, 0, {}}};
  p.reduce_spec.fn = proposal::ReduceFn::kMean;
  p.reduce_spec.compatibility =
      proposal::SupportedCompatibility(proposal::ReduceFn::kMean);
  p.threat_model = proposal::ThreatModel::SemiHonest3PC();
  p.proposer = key.public_key;
  return p;
}

}  // namespace pmsr::testing

#endif  // PMSR_TESTS_TEST_UTIL_H_
