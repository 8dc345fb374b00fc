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
#include "pmsr/sim/generators.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pmsr/common/random.h"
#include "pmsr/common/strings.h"

namespace pmsr::sim {
namespace {

double OnGrid(double v) { return std::nearbyint(v * 65536.0) / 65536.0; }

size_t DrawIndex(Rng& rng, const std::vector<double>& cumulative) {
  const double u = rng.Uniform01() * cumulative.back();
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  return std::min<size_t>(static_cast<size_t>(it - cumulative.begin()),
                          cumulative.size() - 1);
}

}  // namespace

std::vector<double> SleepScores(uint64_t seed, uint32_t node, uint32_t days) {
  Rng rng(MixSeed(seed, kSleepStream + node));
  std::vector<double> scores(days);
  for (double& s : scores) s = static_cast<double>(rng.Between(50, 100));
  return scores;
}

mapper::LocalDataset SleepDataset(uint64_t seed, uint32_t node,
                                  uint32_t days) {
  std::vector<std::vector<double>> rows;
  for (double s : SleepScores(seed, node, days)) rows.push_back({s});
  return *mapper::LocalDataset::Create({"score"}, std::move(rows),
                                       mapper::Provenance::kReal);
}

std::vector<bool> DropoutMask(uint64_t seed, size_t nodes, double rate) {
  Rng rng(MixSeed(seed, kDropoutStream));
  std::vector<bool> mask(nodes);
  for (size_t i = 0; i < nodes; ++i) mask[i] = rng.Bernoulli(rate);
  return mask;
}

EnsembleCorpus GenerateEnsembleCorpus(uint64_t seed, uint32_t questions,
                                      uint32_t choices,
                                      const std::vector<double>& strengths) {
  EnsembleCorpus corpus;
  corpus.choices = choices;
  Rng label_rng(MixSeed(seed, kEnsembleStream));
  corpus.labels.resize(questions);
  for (uint32_t& label : corpus.labels) {
    label = static_cast<uint32_t>(label_rng.Below(choices));
  }
  corpus.logprobs.resize(strengths.size());
  for (size_t m = 0; m < strengths.size(); ++m) {
    Rng rng(MixSeed(seed, kEnsembleStream + 1 + m));
    auto& rows = corpus.logprobs[m];
    rows.resize(questions);
    for (uint32_t q = 0; q < questions; ++q) {
      std::vector<double> logits(choices);
      for (uint32_t c = 0; c < choices; ++c) {
        logits[c] = rng.Normal() + (c == corpus.labels[q] ? strengths[m] : 0);
      }
      const double top = *std::max_element(logits.begin(), logits.end());
      double norm = 0;
      for (double l : logits) norm += std::exp(l - top);
      const double log_norm = top + std::log(norm);
      rows[q].resize(choices);
      for (uint32_t c = 0; c < choices; ++c) {
        rows[q][c] = OnGrid(logits[c] - log_norm);
      }
    }
  }
  return corpus;
}

mapper::LocalDataset ModelDataset(const EnsembleCorpus& corpus,
                                  uint32_t model) {
  std::vector<std::string> fields = {"item"};
  for (uint32_t c = 0; c < corpus.choices; ++c) {
    fields.push_back(StrCat("lp_", c));
  }
  std::vector<std::vector<double>> rows;
  const auto& lp = corpus.logprobs[model];
  for (size_t q = 0; q < lp.size(); ++q) {
    std::vector<double> row = {static_cast<double>(q)};
    row.insert(row.end(), lp[q].begin(), lp[q].end());
    rows.push_back(std::move(row));
  }
  return *mapper::LocalDataset::Create(std::move(fields), std::move(rows),
                                       mapper::Provenance::kReal);
}

const std::vector<std::string>& IndustryNames() {
  static const std::vector<std::string> kNames = {
      "technology",     "healthcare",    "retail",
      "manufacturing",  "education",     "finance",
      "construction",   "hospitality",   "government",
      "transportation", "professional",  "real_estate",
      "agriculture",    "energy",        "media",
      "wholesale",      "administrative", "other_services",
  };
  return kNames;
}

std::vector<double> IndustryBaseline() {
  std::vector<double> weights = {2.0, 13.5, 10.0, 8.5, 9.0, 5.5,
                                 5.0, 10.0, 7.0,  4.5, 9.5, 1.5,
                                 1.0, 1.0,  1.5,  4.0, 4.5, 2.5};
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (double& w : weights) w /= total;
  return weights;
}

AuditCorpus GenerateAuditCorpus(uint64_t seed,
                                const AuditCorpusOptions& options) {
  Rng rng(MixSeed(seed, kAuditStream));
  const std::vector<double> baseline = IndustryBaseline();
  // Technology gets tech_factor times its baseline share; the remaining
  // categories share the rest in baseline proportion.
  const double tech = baseline[kTechnologyIndex];
  const double rest_scale =
      (1.0 - options.tech_factor * tech) / (1.0 - tech);
  std::vector<double> cumulative;
  double acc = 0;
  for (size_t c = 0; c < baseline.size(); ++c) {
    acc += baseline[c] *
           (c == kTechnologyIndex ? options.tech_factor : rest_scale);
    cumulative.push_back(acc);
  }

  AuditCorpus corpus;
  corpus.video_counts.assign(options.videos, 0.0);
  corpus.category_counts.assign(baseline.size(), 0.0);
  std::vector<uint32_t> per_video(options.videos);
  uint64_t total = 0;
  for (uint32_t v = 0; v < options.videos; ++v) {
    const double draw = options.pareto_scale *
                        std::pow(rng.UniformOpen01(), -1.0 / options.pareto_alpha);
    per_video[v] = static_cast<uint32_t>(
        std::min<double>(std::floor(draw), options.max_per_video));
    total += per_video[v];
  }
  std::vector<std::vector<double>> rows;
  rows.reserve(total);
  for (uint32_t v = 0; v < options.videos; ++v) {
    for (uint32_t i = 0; i < per_video[v]; ++i) {
      const uint32_t video =
          options.uniform_videos
              ? static_cast<uint32_t>(rng.Below(options.videos))
              : v;
      const size_t category = DrawIndex(rng, cumulative);
      corpus.video_counts[video] += 1;
      corpus.category_counts[category] += 1;
      rows.push_back({static_cast<double>(category),
                      static_cast<double>(video)});
    }
  }
  corpus.impressions = *mapper::LocalDataset::Create(
      {"category", "video_id"}, std::move(rows), mapper::Provenance::kReal);
  return corpus;
}

}  // namespace pmsr::sim
