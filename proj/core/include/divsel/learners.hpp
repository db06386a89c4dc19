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
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "divsel/features.hpp"
#include "divsel/softmax.hpp"
#include "divsel/types.hpp"

namespace divsel {

// A base learning algorithm over feature rows.
class Learner {
 public:
  virtual ~Learner() = default;

  virtual std::string_view name() const noexcept = 0;
  virtual void fit(const FeatureMatrix& x, std::span<const Label> y, std::size_t num_classes) = 0;
  virtual Label predict(const SparseRow& x) const = 0;
};

// Multinomial naive Bayes with additive (Laplace) smoothing. When training
// data holds negative values (HASHED-DENSE) each column is split into its
// positive and negative parts so all counts stay non-negative.
class NaiveBayes final : public Learner {
 public:
  explicit NaiveBayes(double alpha = 1.0) : alpha_(alpha) {}

  std::string_view name() const noexcept override { return "NB"; }
  void fit(const FeatureMatrix& x, std::span<const Label> y, std::size_t num_classes) override;
  Label predict(const SparseRow& x) const override;

  // Unnormalized joint log-likelihoods, one per class.
  std::vector<double> log_scores(const SparseRow& x) const;
  std::vector<double> posterior(const SparseRow& x) const;

 private:
  double alpha_;
  bool split_signs_ = false;
  std::size_t num_classes_ = 0;
  std::size_t columns_ = 0;
  std::vector<double> log_prior_;
  std::vector<double> log_likelihood_;  // num_classes x columns
};

// Softmax regression on L2-normalized rows, trained by full-batch gradient descent.
class LogisticRegression final : public Learner {
 public:
  explicit LogisticRegression(SoftmaxOptions options = {}) : options_(options) {}

  std::string_view name() const noexcept override { return "LR"; }
  void fit(const FeatureMatrix& x, std::span<const Label> y, std::size_t num_classes) override;
  Label predict(const SparseRow& x) const override;

  const SoftmaxFit& training() const noexcept { return fit_; }

 private:
  SoftmaxOptions options_;
  SoftmaxFit fit_;
};

// k nearest neighbours under cosine distance. Neighbours at equal distance
// are taken in training order; vote ties go to the smallest class index.
class NearestNeighbors final : public Learner {
 public:
  explicit NearestNeighbors(std::size_t k = 5) : k_(k) {}

  std::string_view name() const noexcept override { return "KNN"; }
  void fit(const FeatureMatrix& x, std::span<const Label> y, std::size_t num_classes) override;
  Label predict(const SparseRow& x) const override;

 private:
  std::size_t k_;
  std::size_t num_classes_ = 0;
  std::vector<SparseRow> rows_;
  std::vector<Label> labels_;
};

// Nearest class centroid (Euclidean) over L2-normalized rows.
class NearestCentroid final : public Learner {
 public:
  std::string_view name() const noexcept override { return "NC"; }
  void fit(const FeatureMatrix& x, std::span<const Label> y, std::size_t num_classes) override;
  Label predict(const SparseRow& x) const override;

 private:
  std::size_t num_classes_ = 0;
  std::size_t dimension_ = 0;
  std::vector<double> centroids_;  // num_classes x dimension
  std::vector<double> squared_norms_;
};

struct LearnerOptions {
  SoftmaxOptions lr;
  std::size_t knn_k = 5;
  double nb_alpha = 1.0;
};

// Supported tokens: NB, LR, KNN, NC. Unknown tokens throw InvalidArgument.
std::unique_ptr<Learner> make_learner(std::string_view algorithm, const LearnerOptions& options);

bool is_supported_algorithm(std::string_view algorithm);

SparseRow l2_normalized(const SparseRow& x);

}  // namespace divsel
