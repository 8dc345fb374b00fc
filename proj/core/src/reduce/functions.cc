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
#include "pmsr/reduce/functions.h"

#include <algorithm>
#include <cmath>
#include <functional>

#include "pmsr/common/status.h"
#include "pmsr/common/strings.h"

namespace pmsr::reduce {

absl::StatusOr<double> Gini(std::span<const double> values) {
  if (values.empty()) return MakeError(ErrorCode::kEmpty);
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() < 0) {
    return MakeError(ErrorCode::kOutOfRange, "negative value");
  }
  const double n = static_cast<double>(sorted.size());
  double total = 0;
  for (double v : sorted) total += v;
  if (!(total > 0)) return MakeError(ErrorCode::kZeroMean);
  // sum_{i<j} (x_j - x_i) = sum_i (2i - n - 1) x_(i), 1-based ranks.
  double weighted = 0;
  for (size_t i = 0; i < sorted.size(); ++i) {
    weighted += (2.0 * static_cast<double>(i + 1) - n - 1.0) * sorted[i];
  }
  return weighted / (n * total);
}

absl::StatusOr<double> TopDecileShare(std::span<const double> values) {
  if (values.empty()) return MakeError(ErrorCode::kEmpty);
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double total = 0;
  for (double v : sorted) total += v;
  if (!(total > 0)) return MakeError(ErrorCode::kZeroTotal);
  const size_t top = (sorted.size() + 9) / 10;
  double head = 0;
  for (size_t i = 0; i < top; ++i) head += sorted[i];
  return head / total;
}

absl::StatusOr<size_t> GacEnsemble(
    const std::vector<std::vector<double>>& logprobs,
    std::span<const double> weights) {
  if (logprobs.empty() || logprobs.front().empty()) {
    return MakeError(ErrorCode::kDimensionMismatch, "empty matrix");
  }
  if (weights.size() != logprobs.size()) {
    return MakeError(ErrorCode::kDimensionMismatch,
                     StrCat(weights.size(), " weights for ", logprobs.size(),
                            " models"));
  }
  const size_t choices = logprobs.front().size();
  double weight_total = 0;
  for (double w : weights) {
    if (!(w > 0) || !std::isfinite(w)) {
      return MakeError(ErrorCode::kDimensionMismatch, "non-positive weight");
    }
    weight_total += w;
  }
  std::vector<double> score(choices, 0.0);
  for (size_t m = 0; m < logprobs.size(); ++m) {
    if (logprobs[m].size() != choices) {
      return MakeError(ErrorCode::kDimensionMismatch,
                       StrCat("model ", m, " has ", logprobs[m].size(),
                              " choices"));
    }
    const double w = weights[m] / weight_total;
    for (size_t c = 0; c < choices; ++c) {
      if (!std::isfinite(logprobs[m][c])) {
        return MakeError(ErrorCode::kDimensionMismatch, "non-finite logprob");
      }
      score[c] += w * logprobs[m][c];
    }
  }
  size_t best = 0;
  for (size_t c = 1; c < choices; ++c) {
    if (score[c] > score[best]) best = c;
  }
  return best;
}

absl::StatusOr<double> TheoreticalMax(
    const std::vector<std::vector<bool>>& correct) {
  if (correct.empty()) return MakeError(ErrorCode::kEmpty);
  size_t covered = 0;
  for (const auto& row : correct) {
    if (std::any_of(row.begin(), row.end(), [](bool b) { return b; })) {
      ++covered;
    }
  }
  return static_cast<double>(covered) / static_cast<double>(correct.size());
}

absl::StatusOr<int64_t> QuantizeWeight(double weight) {
  const double scaled = std::nearbyint(weight * kGacWeightScale);
  if (!std::isfinite(weight) || scaled < 1 || scaled > 1e12) {
    return MakeError(ErrorCode::kOutOfRange, StrCat("weight ", weight));
  }
  return static_cast<int64_t>(scaled);
}

absl::StatusOr<std::vector<double>> ApplyReduceFunction(
    const proposal::ReduceFnSpec& spec,
    const std::optional<std::string>& reduce_post, const Aggregate& aggregate) {
  using proposal::ReduceFn;
  if (aggregate.scaled.empty()) {
    return MakeError(ErrorCode::kEmpty, "empty aggregate");
  }
  std::vector<double> decoded;
  decoded.reserve(aggregate.scaled.size());
  for (int64_t v : aggregate.scaled) {
    decoded.push_back(static_cast<double>(v) / aggregate.scale);
  }
  std::vector<double> out;
  switch (spec.fn) {
    case ReduceFn::kSum:
    case ReduceFn::kHistogramMerge:
      out = decoded;
      break;
    case ReduceFn::kMean:
      if (aggregate.participants == 0) return MakeError(ErrorCode::kZeroMean);
      for (double v : decoded) {
        out.push_back(v / static_cast<double>(aggregate.participants));
      }
      break;
    case ReduceFn::kGini: {
      PMSR_ASSIGN_OR_RETURN(double g, Gini(decoded));
      out = {g};
      break;
    }
    case ReduceFn::kTopDecileShare: {
      PMSR_ASSIGN_OR_RETURN(double share, TopDecileShare(decoded));
      out = {share};
      break;
    }
    case ReduceFn::kGacEnsemble: {
      // Exact integer comparison; lowest index wins ties.
      size_t best = 0;
      for (size_t c = 1; c < aggregate.scaled.size(); ++c) {
        if (aggregate.scaled[c] > aggregate.scaled[best]) best = c;
      }
      out = {static_cast<double>(best)};
      break;
    }
    case ReduceFn::kTheoMax: {
      size_t positive = 0;
      for (int64_t v : aggregate.scaled) positive += v > 0 ? 1 : 0;
      out = {static_cast<double>(positive) /
             static_cast<double>(aggregate.scaled.size())};
      break;
    }
  }
  if (reduce_post.has_value()) {
    PMSR_ASSIGN_OR_RETURN(proposal::Clamp clamp,
                          proposal::ParsePostProcess(*reduce_post));
    for (double& v : out) v = clamp.Apply(v);
  }
  return out;
}

}  // namespace pmsr::reduce
