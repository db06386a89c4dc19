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
#include <functional>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "divsel/prediction_matrix.hpp"
#include "divsel/types.hpp"

namespace divsel {

// Fraction of instances on which both classifiers are wrong.
double double_fault(std::span<const Label> a, std::span<const Label> b,
                    std::span<const Label> truth);

// Fraction of instances on which the two classifiers disagree.
double disagreement(std::span<const Label> a, std::span<const Label> b);

// Pairwise distance between two prediction columns given the truth. Must be
// symmetric in (a, b) and return a value in [0, 1].
using PairDistance = std::function<double(std::span<const Label> a, std::span<const Label> b,
                                          std::span<const Label> truth)>;

enum class DistanceConversion : std::uint8_t {
  DoubleFault,   // 1 - DF: classifiers that fail together are close
  Disagreement,  // disagreement rate
};

std::string_view to_string(DistanceConversion conversion) noexcept;
DistanceConversion parse_distance_conversion(std::string_view text);
PairDistance pair_distance(DistanceConversion conversion);

// Symmetric P x P matrix of classifier distances.
//
// Construction rejects non-square tables, asymmetry, a non-zero diagonal, and
// entries outside [0, 1].
class DissimilarityMatrix {
 public:
  DissimilarityMatrix(std::vector<ClassifierId> ids, std::vector<double> values);

  std::size_t size() const noexcept { return ids_.size(); }
  const std::vector<ClassifierId>& ids() const noexcept { return ids_; }
  const std::vector<double>& values() const noexcept { return values_; }
  double at(std::size_t i, std::size_t j) const noexcept { return values_[i * ids_.size() + j]; }
  std::size_t index_of(const ClassifierId& id) const;

  // Mean distance over unordered pairs of `members` (indices); 0 for fewer than two.
  double mean_pairwise(std::span<const std::size_t> members) const;

  friend bool operator==(const DissimilarityMatrix&, const DissimilarityMatrix&) = default;

 private:
  std::vector<ClassifierId> ids_;
  std::vector<double> values_;
};

// entry(i, j) = distance(col_i, col_j, truth) for i != j, entry(i, i) = 0.
// Needs at least two classifiers.
DissimilarityMatrix dissimilarity_matrix(const PredictionMatrix& pm,
                                         const PairDistance& distance);
DissimilarityMatrix dissimilarity_matrix(
    const PredictionMatrix& pm, DistanceConversion conversion = DistanceConversion::DoubleFault);

// Square CSV: header row and first column hold ids; values printed with 17
// significant digits.
void write_dissimilarity_csv(std::ostream& out, const DissimilarityMatrix& m);
DissimilarityMatrix read_dissimilarity_csv(std::istream& in);

}  // namespace divsel
