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

// Reference implementations used only by tests. Each one is written from the
// definition, without sharing code with the library, so agreement between the
// two is meaningful.

#include <cstddef>
#include <span>
#include <vector>

#include "divsel/linkage.hpp"
#include "divsel/types.hpp"

namespace divsel::testing {

// |{i : a[i] != truth[i] and b[i] != truth[i]}| / N by direct enumeration.
double enumerate_double_fault(std::span<const Label> a, std::span<const Label> b,
                              std::span<const Label> truth);

struct ConfusionMetrics {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Builds the confusion matrix cell by cell and averages per-class scores.
ConfusionMetrics hand_metrics(std::span<const Label> predicted, std::span<const Label> truth,
                              std::size_t num_classes);

// Agglomeration that recomputes every inter-cluster distance from the member
// sets at each step instead of updating a matrix:
//   SINGLE    min over cross pairs
//   COMPLETE  max over cross pairs
//   AVERAGE   mean over cross pairs
//   CENTROID  mean_AB - mean_AA / 2 - mean_BB / 2 (means over ordered pairs,
//             self pairs included)
// Pairs whose distances are within `tie_tolerance` count as tied and the one
// with the smallest (min node, max node) key merges.
std::vector<MergeStep> brute_force_linkage(std::span<const double> m, std::size_t p,
                                           LinkageMethod method, double tie_tolerance = 1e-12);

}  // namespace divsel::testing
