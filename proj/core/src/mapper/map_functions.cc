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
#include "pmsr/mapper/map_functions.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <string>

#include "pmsr/common/status.h"
#include "pmsr/common/strings.h"

namespace pmsr::mapper {
namespace {

using proposal::MapFn;
using proposal::MapFnSpec;

absl::StatusOr<std::vector<double>> BoundedColumn(const LocalDataset& ds,
                                                  const MapFnSpec& spec) {
  PMSR_ASSIGN_OR_RETURN(std::vector<double> values, ds.Column(spec.field));
  if (spec.bounds.has_value()) {
    auto [lo, hi] = *spec.bounds;
    for (double& v : values) v = std::clamp(v, lo, hi);
  }
  return values;
}

double Sum(const std::vector<double>& values) {
  double total = 0;
  for (double v : values) total += v;
  return total;
}

std::vector<double> Histogram(const std::vector<double>& values,
                              const std::vector<double>& edges) {
  std::vector<double> counts(edges.size() - 1, 0.0);
  for (double v : values) {
    if (v < edges.front() || v > edges.back()) continue;
    auto it = std::upper_bound(edges.begin(), edges.end(), v);
    size_t bin = static_cast<size_t>(it - edges.begin()) - 1;
    // The last bin is closed on the right.
    if (bin == counts.size()) --bin;
    counts[bin] += 1;
  }
  return counts;
}

absl::StatusOr<std::vector<double>> LogprobVector(const LocalDataset& ds,
                                                  uint32_t item_id) {
  auto item_col = ds.FieldIndex("item");
  if (!item_col) return MakeError(ErrorCode::kMissingField, "item");
  std::map<int, size_t> lp_cols;
  for (size_t i = 0; i < ds.fields().size(); ++i) {
    const std::string& name = ds.fields()[i];
    if (name.rfind("lp_", 0) != 0) continue;
    int index = 0;
    auto [ptr, ec] =
        std::from_chars(name.data() + 3, name.data() + name.size(), index);
    if (ec == std::errc() && ptr == name.data() + name.size()) {
      lp_cols[index] = i;
    }
  }
  if (lp_cols.empty()) return MakeError(ErrorCode::kMissingField, "lp_0");
  for (const auto& row : ds.rows()) {
    if (row[*item_col] != static_cast<double>(item_id)) continue;
    std::vector<double> out;
    for (const auto& [index, col] : lp_cols) out.push_back(row[col]);
    return out;
  }
  return MakeError(ErrorCode::kMissingField, StrCat("item ", item_id));
}

}  // namespace

std::vector<double> RollingMeanSeries(const std::vector<double>& values,
                                      size_t window) {
  std::vector<double> out;
  out.reserve(values.size());
  double running = 0;
  for (size_t i = 0; i < values.size(); ++i) {
    running += values[i];
    if (i >= window) running -= values[i - window];
    const size_t count = std::min(i + 1, window);
    out.push_back(running / static_cast<double>(count));
  }
  return out;
}

absl::StatusOr<std::vector<double>> ExecuteMap(const LocalDataset& ds,
                                               const MapFnSpec& spec) {
  if (ds.empty()) return MakeError(ErrorCode::kEmptyDataset);
  switch (spec.fn) {
    case MapFn::kCount:
      return std::vector<double>{static_cast<double>(ds.size())};
    case MapFn::kMeanOf: {
      PMSR_ASSIGN_OR_RETURN(std::vector<double> values, BoundedColumn(ds, spec));
      return std::vector<double>{Sum(values) /
                                 static_cast<double>(values.size())};
    }
    case MapFn::kSumOf: {
      PMSR_ASSIGN_OR_RETURN(std::vector<double> values, BoundedColumn(ds, spec));
      return std::vector<double>{Sum(values)};
    }
    case MapFn::kHistogramOf: {
      PMSR_ASSIGN_OR_RETURN(std::vector<double> values, ds.Column(spec.field));
      return Histogram(values, spec.bin_edges);
    }
    case MapFn::kRollingMean: {
      PMSR_ASSIGN_OR_RETURN(std::vector<double> values, BoundedColumn(ds, spec));
      const size_t window = std::min<size_t>(spec.window, values.size());
      double total = 0;
      for (size_t i = values.size() - window; i < values.size(); ++i) {
        total += values[i];
      }
      return std::vector<double>{total / static_cast<double>(window)};
    }
    case MapFn::kLogprobVector: {
      PMSR_ASSIGN_OR_RETURN(std::vector<double> values,
                            LogprobVector(ds, spec.item_id));
      if (spec.bounds.has_value()) {
        for (double& v : values) {
          v = std::clamp(v, spec.bounds->first, spec.bounds->second);
        }
      }
      return values;
    }
  }
  return MakeError(ErrorCode::kInvalidProposal, "unknown map function");
}

absl::StatusOr<double> Sensitivity(const MapFnSpec& spec, size_t records,
                                   size_t width) {
  if (records == 0) return MakeError(ErrorCode::kEmptyDataset);
  switch (spec.fn) {
    case MapFn::kCount:
    case MapFn::kHistogramOf:
      return 1.0;
    default:
      break;
  }
  if (!spec.bounds.has_value()) {
    return MakeError(ErrorCode::kInvalidEpsilon,
                     StrCat(proposal::MapFnName(spec.fn),
                            " needs declared bounds for noise calibration"));
  }
  const auto [lo, hi] = *spec.bounds;
  const double range = hi - lo;
  switch (spec.fn) {
    case MapFn::kMeanOf:
      return range / static_cast<double>(records);
    case MapFn::kSumOf:
      return std::max(std::fabs(lo), std::fabs(hi));
    case MapFn::kRollingMean:
      return range /
             static_cast<double>(std::min<size_t>(spec.window, records));
    case MapFn::kLogprobVector:
      return range * static_cast<double>(width);
    default:
      break;
  }
  return 1.0;
}

absl::StatusOr<double> ApplyLaplace(double value, double sensitivity,
                                    double epsilon, Rng& rng) {
  if (!std::isfinite(epsilon) || !(epsilon > 0)) {
    return MakeError(ErrorCode::kInvalidEpsilon, StrCat("epsilon=", epsilon));
  }
  if (!std::isfinite(sensitivity) || !(sensitivity > 0)) {
    return MakeError(ErrorCode::kInvalidEpsilon,
                     StrCat("sensitivity=", sensitivity));
  }
  const double scale = sensitivity / epsilon;
  const double u = rng.UniformOpen01() - 0.5;
  const double noise =
      -scale * std::copysign(1.0, u) * std::log1p(-2.0 * std::fabs(u));
  return value + noise;
}

absl::StatusOr<proposal::MapOutput> EncodeOutput(
    const proposal::ComputationId& id, const proposal::OutputSchema& schema,
    const std::vector<double>& values) {
  proposal::MapOutput out{id, {}};
  size_t next = 0;
  for (size_t f = 0; f < schema.fields.size(); ++f) {
    const proposal::SchemaField& field = schema.fields[f];
    const bool last = f + 1 == schema.fields.size();
    const size_t take =
        last ? values.size() - next
             : std::min(field.Width(), values.size() - next);
    proposal::OutputValue value{field.name, field.kind, {}};
    for (size_t i = 0; i < take; ++i) {
      PMSR_ASSIGN_OR_RETURN(FixedPoint fp, EncodeFixed(values[next + i]));
      value.elements.push_back(fp);
    }
    next += take;
    out.values.push_back(std::move(value));
  }
  return out;
}

absl::StatusOr<PrivateMapResult> RunPrivateMap(
    const LocalDataset& ds, const proposal::ComputationProposal& proposal,
    Rng& noise_rng) {
  PrivateMapResult result;
  PMSR_ASSIGN_OR_RETURN(result.raw, ExecuteMap(ds, proposal.map_spec));
  result.released = result.raw;
  if (proposal.epsilon.has_value()) {
    PMSR_ASSIGN_OR_RETURN(
        double sensitivity,
        Sensitivity(proposal.map_spec, ds.size(), result.raw.size()));
    for (double& v : result.released) {
      PMSR_ASSIGN_OR_RETURN(
          v, ApplyLaplace(v, sensitivity, *proposal.epsilon, noise_rng));
    }
  }
  if (proposal.map_post.has_value()) {
    PMSR_ASSIGN_OR_RETURN(proposal::Clamp clamp,
                          proposal::ParsePostProcess(*proposal.map_post));
    for (double& v : result.released) v = clamp.Apply(v);
  }
  PMSR_ASSIGN_OR_RETURN(
      result.output,
      EncodeOutput(proposal.id, proposal.output_schema, result.released));
  PMSR_RETURN_IF_ERROR(
      proposal::ValidateOutput(result.output, proposal.output_schema));
  return result;
}

}  // namespace pmsr::mapper
