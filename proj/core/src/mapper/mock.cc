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
#include "pmsr/mapper/mock.h"

#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

#include "pmsr/common/random.h"
#include "pmsr/common/status.h"

namespace pmsr::mapper {

absl::StatusOr<LocalDataset> DeriveMock(const LocalDataset& real_ds,
                                        const MockMode& mode) {
  if (real_ds.empty()) return MakeError(ErrorCode::kEmptyDataset);
  Rng rng(mode.seed);
  const auto& rows = real_ds.rows();
  std::vector<std::vector<double>> out;

  if (mode.kind == MockMode::Kind::kSubsample) {
    const size_t k = std::min(mode.k, rows.size());
    std::vector<size_t> order(rows.size());
    std::iota(order.begin(), order.end(), 0);
    // Partial Fisher-Yates: the first k slots are the sample.
    for (size_t i = 0; i < k; ++i) {
      size_t j = i + rng.Below(order.size() - i);
      std::swap(order[i], order[j]);
      out.push_back(rows[order[i]]);
    }
  } else {
    const size_t width = real_ds.fields().size();
    const double n = static_cast<double>(rows.size());
    std::vector<double> mean(width, 0.0), sd(width, 0.0);
    for (const auto& row : rows) {
      for (size_t f = 0; f < width; ++f) mean[f] += row[f];
    }
    for (double& m : mean) m /= n;
    for (const auto& row : rows) {
      for (size_t f = 0; f < width; ++f) {
        sd[f] += (row[f] - mean[f]) * (row[f] - mean[f]);
      }
    }
    for (double& s : sd) s = std::sqrt(s / n);
    out.assign(rows.size(), std::vector<double>(width));
    for (auto& row : out) {
      for (size_t f = 0; f < width; ++f) row[f] = rng.Normal(mean[f], sd[f]);
    }
  }
  return LocalDataset::Create(real_ds.fields(), std::move(out),
                              Provenance::kMock);
}

}  // namespace pmsr::mapper
