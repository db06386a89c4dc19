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

// Pool simulator: prediction matrices built from chosen error sets, so that
// double-fault values, accuracies and cluster structure are known exactly.

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "divsel/prediction_matrix.hpp"

namespace divsel::testing {

struct SimulatedClassifier {
  std::string id;  // canonical "E-A"
  std::set<std::size_t> errors;  // row indices predicted wrongly
};

// Correct label everywhere except on `errors`, where the prediction is
// (truth + 1) mod C.
PredictionMatrix simulate_pool(const std::vector<Label>& truth, std::size_t num_classes,
                               const std::vector<SimulatedClassifier>& classifiers,
                               Split split = Split::Validation);

// Four classifiers over 20 rows of class 0/1: GLOVE-LR wrong on rows 0..5,
// CV-NB on rows 0..6, BERT-SVM on rows 10..11, TFIDF-SVM on rows 14..16.
// GLOVE-LR and CV-NB share six faults; every other pair shares none.
PredictionMatrix four_classifier_fixture();

// Twelve classifiers in three behaviour groups of four. Members of a group
// predict identically; groups err on disjoint random row sets covering
// 15%, 20% and 25% of the rows. group_of[j] is the group of column j.
struct RedundantPool {
  PredictionMatrix validation;
  PredictionMatrix test;
  std::vector<std::size_t> group_of;
};
RedundantPool redundancy_fixture(std::size_t rows = 600, std::uint64_t seed = 2024);

// Random symmetric P x P matrix with zero diagonal and entries in [0, 1).
std::vector<double> random_symmetric(std::size_t p, std::uint64_t seed);

}  // namespace divsel::testing
