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
#ifndef PMSR_MAPPER_DATASET_H_
#define PMSR_MAPPER_DATASET_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace pmsr::mapper {

enum class Provenance { kReal, kMock };

std::string_view ProvenanceName(Provenance p);

// Flat numeric records held by a Light Node. Records are kept in record
// index order; every record has the same field set.
class LocalDataset {
 public:
  // An empty real dataset.
  LocalDataset() = default;

  static absl::StatusOr<LocalDataset> Create(
      std::vector<std::string> fields, std::vector<std::vector<double>> rows,
      Provenance provenance);

  const std::vector<std::string>& fields() const { return fields_; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }
  Provenance provenance() const { return provenance_; }
  size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  std::optional<size_t> FieldIndex(std::string_view name) const;
  // MissingField if `name` is not a field.
  absl::StatusOr<std::vector<double>> Column(std::string_view name) const;

 private:
  LocalDataset(std::vector<std::string> fields,
               std::vector<std::vector<double>> rows, Provenance provenance)
      : fields_(std::move(fields)),
        rows_(std::move(rows)),
        provenance_(provenance) {}

  std::vector<std::string> fields_;
  std::vector<std::vector<double>> rows_;
  Provenance provenance_ = Provenance::kReal;
};

// Comma-separated values with a header row. A leading column named `index`
// is treated as the record index: rows are ordered by it and it is not
// exposed as a field.
absl::StatusOr<LocalDataset> ParseCsv(std::string_view text,
                                      Provenance provenance);
absl::StatusOr<LocalDataset> LoadCsv(const std::string& path,
                                     Provenance provenance);

}  // namespace pmsr::mapper

#endif  // PMSR_MAPPER_DATASET_H_
