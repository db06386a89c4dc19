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
#include <span>
#include <string>
#include <vector>

#include "divsel/features.hpp"
#include "divsel/types.hpp"

namespace divsel {

struct SoftmaxOptions {
  double step = 0.1;
  std::size_t epochs = 300;
  double l2 = 1e-4;
};

// Multinomial logistic regression weights, row-major
// num_classes x (dimension + 1) with the bias in the last column.
struct SoftmaxModel {
  std::size_t num_classes = 0;
  std::size_t dimension = 0;
  std::vector<double> weights;

  std::vector<double> scores(const SparseRow& x) const;
  std::vector<double> probabilities(const SparseRow& x) const;
  // Ties go to the smallest class index.
  Label predict(const SparseRow& x) const;
};

struct SoftmaxFit {
  SoftmaxModel model;
  // Objective before each epoch, then after the last accepted one.
  std::vector<double> objective;
  bool diverged = false;
  std::string diagnostic;
};

// Mean cross-entropy plus (l2 / 2) * ||W||^2 (bias excluded).
double softmax_objective(const SoftmaxModel& model, const FeatureMatrix& x,
                         std::span<const Label> y, double l2);

// Full-batch gradient descent from zero weights with a fixed step. If an epoch
// increases the objective the step is rolled back, training stops, and the fit
// is flagged as diverged.
SoftmaxFit fit_softmax(const FeatureMatrix& x, std::span<const Label> y, std::size_t num_classes,
                       const SoftmaxOptions& options);

}  // namespace divsel
