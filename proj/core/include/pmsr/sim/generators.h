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
#ifndef PMSR_SIM_GENERATORS_H_
#define PMSR_SIM_GENERATORS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "pmsr/mapper/dataset.h"
#include "pmsr/proposal/types.h"

namespace pmsr::sim {

// Stream tags for MixSeed so that every generator draws from its own
// sequence.
inline constexpr uint64_t kSleepStream = 0x534c'0000'0000'0000ULL;
inline constexpr uint64_t kDropoutStream = 0x4452'0000'0000'0000ULL;
inline constexpr uint64_t kKeyStream = 0x4b45'0000'0000'0000ULL;
inline constexpr uint64_t kNodeStream = 0x4e4f'0000'0000'0000ULL;
inline constexpr uint64_t kEnsembleStream = 0x454e'0000'0000'0000ULL;
inline constexpr uint64_t kAuditStream = 0x4155'0000'0000'0000ULL;
inline constexpr uint64_t kScenarioStream = 0x5343'0000'0000'0000ULL;

// `days` integer scores drawn uniformly from [50, 100] for light node
// `node`.
std::vector<double> SleepScores(uint64_t seed, uint32_t node, uint32_t days);

// One "score" column holding SleepScores.
mapper::LocalDataset SleepDataset(uint64_t seed, uint32_t node,
                                  uint32_t days);

// Per-node failure draws: entry i is true when node i drops out. Draws are
// independent Bernoulli(rate) taken in node order from one seeded stream.
std::vector<bool> DropoutMask(uint64_t seed, size_t nodes, double rate);

struct EnsembleCorpus {
  uint32_t choices = 0;
  std::vector<uint32_t> labels;
  // logprobs[model][question][choice], each on the 2^-16 grid.
  std::vector<std::vector<std::vector<double>>> logprobs;
};

// Gaussian logits per model: every choice gets N(0, 1) noise and the true
// label gets an extra `strengths[m]`; the row is then log-softmaxed and
// rounded to the fixed-point grid.
EnsembleCorpus GenerateEnsembleCorpus(uint64_t seed, uint32_t questions,
                                      uint32_t choices,
                                      const std::vector<double>& strengths);

// Columns item, lp_0 .. lp_{choices-1}; one row per question.
mapper::LocalDataset ModelDataset(const EnsembleCorpus& corpus,
                                  uint32_t model);

// The 18 industry categories and their baseline employment shares.
const std::vector<std::string>& IndustryNames();
std::vector<double> IndustryBaseline();
inline constexpr size_t kTechnologyIndex = 0;

struct AuditCorpusOptions {
  uint32_t videos = 200;
  // Pareto shape for per-video impression counts.
  double pareto_alpha = 1.16;
  double pareto_scale = 5.0;
  uint32_t max_per_video = 4000;
  // Assign impressions to videos uniformly instead of by Pareto counts.
  bool uniform_videos = false;
  // Over-representation of the technology category relative to baseline.
  double tech_factor = 3.0;
};

struct AuditCorpus {
  // Rows of (category, video_id).
  mapper::LocalDataset impressions;
  std::vector<double> video_counts;
  std::vector<double> category_counts;
};

AuditCorpus GenerateAuditCorpus(uint64_t seed,
                                const AuditCorpusOptions& options);

}  // namespace pmsr::sim

#endif  // PMSR_SIM_GENERATORS_H_
