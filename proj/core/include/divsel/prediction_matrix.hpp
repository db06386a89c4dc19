// Copyright 2026 The divsel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "divsel/types.hpp"

namespace divsel {

// Predicted labels of P classifiers over N instances of one split, plus the
// true labels. This is the only thing the selection and stacking code sees of
// a classifier, so externally trained models can join a pool through it.
class PredictionMatrix {
 public:
  // `predictions` is row-major N x P. Throws InvalidArgument when an entry is
  // out of range, ids repeat, or sizes disagree.
  PredictionMatrix(std::vector<ClassifierId> ids, std::size_t num_classes, std::vector<Label> truth,
                   std::vector<Label> predictions, Split split,
                   std::vector<std::string> label_names = {});

  std::size_t rows() const noexcept { return truth_.size(); }
  std::size_t cols() const noexcept { return ids_.size(); }
  std::size_t num_classes() const noexcept { return num_classes_; }
  Split split() const noexcept { return split_; }

  const std::vector<ClassifierId>& ids() const noexcept { return ids_; }
  const std::vector<Label>& truth() const noexcept { return truth_; }
  const std::vector<std::string>& label_names() const noexcept { return label_names_; }
  std::span<const Label> row(std::size_t i) const {
    return {predictions_.data() + i * ids_.size(), ids_.size()};
  }
  Label at(std::size_t i, std::size_t j) const { return predictions_[i * ids_.size() + j]; }

  std::vector<Label> column(std::size_t j) const;
  std::optional<std::size_t> index_of(const ClassifierId& id) const;
  // Throws InvalidArgument naming the id when it is absent.
  std::size_t require(const ClassifierId& id) const;

  // Matrix restricted to `members`, in that column order.
  PredictionMatrix select(std::span<const ClassifierId> members) const;

  friend bool operator==(const PredictionMatrix&, const PredictionMatrix&) = default;

 private:
  std::vector<ClassifierId> ids_;
  std::size_t num_classes_;
  std::vector<Label> truth_;
  std::vector<Label> predictions_;
  Split split_;
  std::vector<std::string> label_names_;
};

// Wire format: a CSV with header `truth,<id1>,...,<idP>` and one integer row
// per instance, plus a JSON sidecar holding num_classes, the split tag and
// the label names.
void write_prediction_csv(std::ostream& out, const PredictionMatrix& pm);
std::string prediction_metadata_json(const PredictionMatrix& pm);

struct PredictionMetadata {
  std::size_t num_classes = 0;
  Split split = Split::Validation;
  std::vector<std::string> label_names;
};

PredictionMetadata parse_prediction_metadata(std::istream& in);
// Errors carry the 1-based line number of the offending row.
PredictionMatrix read_prediction_csv(std::istream& in, const PredictionMetadata& meta);

// `<csv>.meta.json` next to the CSV.
std::filesystem::path metadata_path_for(const std::filesystem::path& csv_path);

void save_prediction_matrix(const PredictionMatrix& pm, const std::filesystem::path& csv_path);
PredictionMatrix load_prediction_matrix(const std::filesystem::path& csv_path,
                                        std::optional<std::filesystem::path> meta_path = {});

}  // namespace divsel
