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
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "divsel/features.hpp"
#include "divsel/prediction_matrix.hpp"
#include "divsel/softmax.hpp"
#include "divsel/types.hpp"

namespace divsel {

enum class MetaKind : std::uint8_t { LR, NB, Vote };

std::string_view to_string(MetaKind kind) noexcept;
MetaKind parse_meta_kind(std::string_view text);

// Row i is the concatenation, in member order, of the one-hot encoding of each
// member's predicted label: dimension |members| * num_classes.
FeatureMatrix meta_features(const PredictionMatrix& pm, std::span<const ClassifierId> members,
                            std::size_t num_classes);

// Dense copy of a feature matrix, row-major.
std::vector<double> to_dense(const FeatureMatrix& x);

struct StackOptions {
  SoftmaxOptions lr{0.1, 500, 1e-4};
  double nb_alpha = 1.0;
};

// A meta-classifier over member predictions.
//
// LR: softmax regression on meta features.
// NB: categorical naive Bayes, P(member m predicts v | class c) with Laplace smoothing.
// VOTE: plurality of member labels, ties to the smallest class index.
class StackedEnsemble {
 public:
  StackedEnsemble() = default;

  const std::vector<ClassifierId>& members() const noexcept { return members_; }
  MetaKind meta_kind() const noexcept { return kind_; }
  std::size_t num_classes() const noexcept { return num_classes_; }
  std::uint64_t seed() const noexcept { return seed_; }
  const SoftmaxModel& lr_model() const noexcept { return lr_; }
  const std::vector<double>& training_objective() const noexcept { return objective_; }
  bool diverged() const noexcept { return diverged_; }

  // `member_labels` holds one predicted label per member, in member order.
  Label predict_row(std::span<const Label> member_labels) const;
  std::vector<double> probabilities(std::span<const Label> member_labels) const;

  std::string to_json() const;
  static StackedEnsemble from_json(std::string_view json);

  friend bool operator==(const StackedEnsemble& a, const StackedEnsemble& b);

 private:
  friend StackedEnsemble fit_stack(const PredictionMatrix&, std::span<const ClassifierId>,
                                   MetaKind, std::uint64_t, const StackOptions&);

  SparseRow encode(std::span<const Label> member_labels) const;

  std::vector<ClassifierId> members_;
  MetaKind kind_ = MetaKind::Vote;
  std::size_t num_classes_ = 0;
  std::uint64_t seed_ = 0;
  SoftmaxModel lr_;
  std::vector<double> nb_log_prior_;       // num_classes
  std::vector<double> nb_log_likelihood_;  // members x num_classes(class) x num_classes(value)
  std::vector<double> objective_;
  bool diverged_ = false;
};

// Trains the meta-classifier on validation predictions. Every current meta
// learner is deterministic; the seed is recorded for reproducibility.
StackedEnsemble fit_stack(const PredictionMatrix& validation, std::span<const ClassifierId> members,
                          MetaKind kind, std::uint64_t seed, const StackOptions& options = {});

std::vector<Label> predict_stack(const StackedEnsemble& ensemble, const PredictionMatrix& pm);

}  // namespace divsel
