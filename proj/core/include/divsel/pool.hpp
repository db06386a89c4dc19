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
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "divsel/corpus.hpp"
#include "divsel/features.hpp"
#include "divsel/learners.hpp"
#include "divsel/prediction_matrix.hpp"
#include "divsel/text.hpp"
#include "divsel/types.hpp"

namespace divsel {

// One trained pool member. Copies share the immutable feature space and model.
class TrainedClassifier {
 public:
  TrainedClassifier(ClassifierId id, std::shared_ptr<const FeatureSpace> space,
                    std::shared_ptr<const Learner> learner)
      : id_(std::move(id)), space_(std::move(space)), learner_(std::move(learner)) {}

  const ClassifierId& id() const noexcept { return id_; }
  const FeatureSpace& feature_space() const noexcept { return *space_; }
  const std::shared_ptr<const FeatureSpace>& feature_space_ptr() const noexcept { return space_; }
  const Learner& learner() const noexcept { return *learner_; }

  Label predict(std::string_view text) const { return learner_->predict(space_->transform_text(text)); }
  Label predict_features(const SparseRow& x) const { return learner_->predict(x); }

 private:
  ClassifierId id_;
  std::shared_ptr<const FeatureSpace> space_;
  std::shared_ptr<const Learner> learner_;
};

using Pool = std::vector<TrainedClassifier>;

struct PoolConfig {
  PreprocessConfig preprocess;
  std::size_t min_document_frequency = 2;
  std::size_t dense_dimension = 64;
  LearnerOptions learners;
  std::uint64_t seed = 42;
  // Worker threads for training; results do not depend on this value.
  std::size_t threads = 1;
};

// Trains |extractors| x |algorithms| classifiers on the TRAIN split only, in
// extractor-major order. Per-extractor seeds derive from (seed, extractor
// token), never from scheduling order.
Pool train_pool(const LabeledCorpus& corpus, std::span<const std::string> extractors,
                std::span<const std::string> algorithms, const PoolConfig& config);

// Row i, column j: classifier j's label for the i-th instance of `split`
// (corpus order). Column order is pool order.
PredictionMatrix predict_matrix(const Pool& pool, const LabeledCorpus& corpus, Split split);

}  // namespace divsel
