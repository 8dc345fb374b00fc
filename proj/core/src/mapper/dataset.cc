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
#include "pmsr/mapper/dataset.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "pmsr/common/status.h"
#include "pmsr/common/strings.h"

namespace pmsr::mapper {
namespace {

std::vector<std::string_view> SplitLine(std::string_view line) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    size_t comma = line.find(',', start);
    std::string_view cell = line.substr(start, comma - start);
    while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) {
      cell.remove_prefix(1);
    }
    while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t' ||
                             cell.back() == '\r')) {
      cell.remove_suffix(1);
    }
    out.push_back(cell);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

std::string_view ProvenanceName(Provenance p) {
  return p == Provenance::kReal ? "real" : "mock";
}

absl::StatusOr<LocalDataset> LocalDataset::Create(
    std::vector<std::string> fields, std::vector<std::vector<double>> rows,
    Provenance provenance) {
  std::set<std::string> unique(fields.begin(), fields.end());
  if (unique.size() != fields.size()) {
    return MakeError(ErrorCode::kParseError, "duplicate field name");
  }
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != fields.size()) {
      return MakeError(ErrorCode::kParseError,
                       StrCat("record ", i, " has ", rows[i].size(),
                              " values, expected ", fields.size()));
    }
  }
  return LocalDataset(std::move(fields), std::move(rows), provenance);
}

std::optional<size_t> LocalDataset::FieldIndex(std::string_view name) const {
  auto it = std::find(fields_.begin(), fields_.end(), name);
  if (it == fields_.end()) return std::nullopt;
  return static_cast<size_t>(it - fields_.begin());
}

absl::StatusOr<std::vector<double>> LocalDataset::Column(
    std::string_view name) const {
  auto index = FieldIndex(name);
  if (!index) return MakeError(ErrorCode::kMissingField, name);
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& row : rows_) out.push_back(row[*index]);
  return out;
}

absl::StatusOr<LocalDataset> ParseCsv(std::string_view text,
                                      Provenance provenance) {
  std::vector<std::string_view> lines;
  size_t start = 0;
  while (start < text.size()) {
    size_t nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(line);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  if (lines.empty()) return MakeError(ErrorCode::kParseError, "missing header");

  std::vector<std::string_view> header = SplitLine(lines[0]);
  const bool indexed = !header.empty() && header[0] == "index";
  std::vector<std::string> fields(header.begin() + (indexed ? 1 : 0),
                                  header.end());
  std::vector<std::pair<double, std::vector<double>>> keyed;
  for (size_t i = 1; i < lines.size(); ++i) {
    std::vector<std::string_view> cells = SplitLine(lines[i]);
    if (cells.size() != header.size()) {
      return MakeError(ErrorCode::kParseError,
                       StrCat("line ", i + 1, ": expected ", header.size(),
                              " columns"));
    }
    std::vector<double> values;
    for (std::string_view cell : cells) {
      double v = 0;
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc() || ptr != cell.data() + cell.size()) {
        return MakeError(ErrorCode::kParseError,
                         StrCat("line ", i + 1, ": bad number '", cell, "'"));
      }
      values.push_back(v);
    }
    double key = static_cast<double>(i);
    if (indexed) {
      key = values.front();
      values.erase(values.begin());
    }
    keyed.emplace_back(key, std::move(values));
  }
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::vector<double>> rows;
  rows.reserve(keyed.size());
  for (auto& [key, values] : keyed) rows.push_back(std::move(values));
  return LocalDataset::Create(std::move(fields), std::move(rows), provenance);
}

absl::StatusOr<LocalDataset> LoadCsv(const std::string& path,
                                     Provenance provenance) {
  std::ifstream in(path);
  if (!in) return MakeError(ErrorCode::kIoError, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseCsv(buffer.str(), provenance);
}

}  // namespace pmsr::mapper
