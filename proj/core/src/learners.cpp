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

#include "divsel/learners.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>

#include "divsel/error.hpp"

namespace divsel {

namespace {

void check_training_data(const FeatureMatrix& x, std::span<const Label> y,
                         std::size_t num_classes) {
  if (x.rows.empty()) throw InvalidArgument("no training rows");
  if (x.rows.size() != y.size()) throw InvalidArgument("feature and label counts differ");
  if (num_classes < 2) throw InvalidArgument("at least 2 classes are required");
  for (Label label : y) {
    if (label >= num_classes) throw InvalidArgument("training label out of range");
  }
}

Label argmax(std::span<const double> v) {
  return static_cast<Label>(std::max_element(v.begin(), v.end()) - v.begin());
}

}  // namespace

SparseRow l2_normalized(const SparseRow& x) {
  SparseRow out = x;
  const double norm = std::sqrt(x.squared_norm());
  if (norm > 0.0) {
    for (auto& v : out.values) v /= norm;
  }
  return out;
}

// ---------------------------------------------------------------------------

void NaiveBayes::fit(const FeatureMatrix& x, std::span<const Label> y, std::size_t num_classes) {
  check_training_data(x, y, num_classes);
  num_classes_ = num_classes;
  split_signs_ = false;
  for (const auto& row : x.rows) {
    if (std::any_of(row.values.begin(), row.values.end(), [](double v) { return v < 0.0; })) {
      split_signs_ = true;
      break;
    }
  }
  columns_ = split_signs_ ? 2 * x.dimension : x.dimension;

  std::vector<double> class_count(num_classes, 0.0);
  std::vector<double> feature_count(num_classes * columns_, 0.0);
  for (std::size_t i = 0; i < x.rows.size(); ++i) {
    const Label c = y[i];
    class_count[c] += 1.0;
    double* f = feature_count.data() + c * columns_;
    const auto& row = x.rows[i];
    for (std::size_t k = 0; k < row.indices.size(); ++k) {
      const double v = row.values[k];
      if (v >= 0.0) {
        f[row.indices[k]] += v;
      } else {
        f[x.dimension + row.indices[k]] -= v;
      }
    }
  }

  const double n = static_cast<double>(x.rows.size());
  log_prior_.resize(num_classes);
  log_likelihood_.assign(num_classes * columns_, 0.0);
  for (std::size_t c = 0; c < num_classes; ++c) {
    log_prior_[c] = std::log(class_count[c] / n);
    if (class_count[c] == 0.0) log_prior_[c] = -std::numeric_limits<double>::infinity();
    const double* f = feature_count.data() + c * columns_;
    const double total = std::accumulate(f, f + columns_, 0.0) + alpha_ * columns_;
    for (std::size_t d = 0; d < columns_; ++d) {
      log_likelihood_[c * columns_ + d] = std::log((f[d] + alpha_) / total);
    }
  }
}

std::vector<double> NaiveBayes::log_scores(const SparseRow& x) const {
  std::vector<double> s(log_prior_);
  const std::size_t half = split_signs_ ? columns_ / 2 : columns_;
  for (std::size_t c = 0; c < num_classes_; ++c) {
    const double* ll = log_likelihood_.data() + c * columns_;
    for (std::size_t k = 0; k < x.indices.size(); ++k) {
      const double v = x.values[k];
      const std::size_t col = x.indices[k];
      if (col >= half) continue;
      if (v >= 0.0) {
        s[c] += v * ll[col];
      } else if (split_signs_) {
        s[c] += -v * ll[half + col];
      }
    }
  }
  return s;
}

std::vector<double> NaiveBayes::posterior(const SparseRow& x) const {
  auto s = log_scores(x);
  const double top = *std::max_element(s.begin(), s.end());
  double total = 0.0;
  for (auto& v : s) {
    v = std::exp(v - top);
    total += v;
  }
  for (auto& v : s) v /= total;
  return s;
}

Label NaiveBayes::predict(const SparseRow& x) const { return argmax(log_scores(x)); }

// ---------------------------------------------------------------------------

void LogisticRegression::fit(const FeatureMatrix& x, std::span<const Label> y,
                             std::size_t num_classes) {
  check_training_data(x, y, num_classes);
  FeatureMatrix normalized;
  normalized.dimension = x.dimension;
  normalized.rows.reserve(x.rows.size());
  for (const auto& row : x.rows) normalized.rows.push_back(l2_normalized(row));
  fit_ = fit_softmax(normalized, y, num_classes, options_);
}

Label LogisticRegression::predict(const SparseRow& x) const {
  return fit_.model.predict(l2_normalized(x));
}

// ---------------------------------------------------------------------------

void NearestNeighbors::fit(const FeatureMatrix& x, std::span<const Label> y,
                           std::size_t num_classes) {
  check_training_data(x, y, num_classes);
  if (k_ == 0) throw InvalidArgument("KNN needs k >= 1");
  num_classes_ = num_classes;
  rows_.clear();
  rows_.reserve(x.rows.size());
  for (const auto& row : x.rows) rows_.push_back(l2_normalized(row));
  labels_.assign(y.begin(), y.end());
}

Label NearestNeighbors::predict(const SparseRow& x) const {
  const SparseRow q = l2_normalized(x);
  // Cosine distance 1 - cos; zero vectors have similarity 0 to everything.
  std::vector<std::pair<double, std::size_t>> dist(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) dist[i] = {1.0 - dot(q, rows_[i]), i};
  const std::size_t k = std::min(k_, dist.size());
  std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
  std::vector<double> votes(num_classes_, 0.0);
  for (std::size_t n = 0; n < k; ++n) votes[labels_[dist[n].second]] += 1.0;
  return argmax(votes);
}

// ---------------------------------------------------------------------------

void NearestCentroid::fit(const FeatureMatrix& x, std::span<const Label> y,
                          std::size_t num_classes) {
  check_training_data(x, y, num_classes);
  num_classes_ = num_classes;
  dimension_ = x.dimension;
  centroids_.assign(num_classes * dimension_, 0.0);
  std::vector<double> count(num_classes, 0.0);
  for (std::size_t i = 0; i < x.rows.size(); ++i) {
    const SparseRow row = l2_normalized(x.rows[i]);
    double* c = centroids_.data() + y[i] * dimension_;
    for (std::size_t k = 0; k < row.indices.size(); ++k) c[row.indices[k]] += row.values[k];
    count[y[i]] += 1.0;
  }
  squared_norms_.assign(num_classes, 0.0);
  for (std::size_t c = 0; c < num_classes; ++c) {
    if (count[c] == 0.0) {
      squared_norms_[c] = std::numeric_limits<double>::infinity();
      continue;
    }
    double* centroid = centroids_.data() + c * dimension_;
    for (std::size_t d = 0; d < dimension_; ++d) {
      centroid[d] /= count[c];
      squared_norms_[c] += centroid[d] * centroid[d];
    }
  }
}

Label NearestCentroid::predict(const SparseRow& x) const {
  const SparseRow q = l2_normalized(x);
  // ||q - c||^2 = ||q||^2 - 2 q.c + ||c||^2; the first term is shared.
  std::vector<double> neg_dist(num_classes_);
  for (std::size_t c = 0; c < num_classes_; ++c) {
    const double qc = q.dot({centroids_.data() + c * dimension_, dimension_});
    neg_dist[c] = 2.0 * qc - squared_norms_[c];
  }
  return argmax(neg_dist);
}

// ---------------------------------------------------------------------------

namespace {

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

}  // namespace

bool is_supported_algorithm(std::string_view algorithm) {
  const auto a = upper(algorithm);
  return a == "NB" || a == "LR" || a == "KNN" || a == "NC";
}

std::unique_ptr<Learner> make_learner(std::string_view algorithm, const LearnerOptions& options) {
  const auto a = upper(algorithm);
  if (a == "NB") return std::make_unique<NaiveBayes>(options.nb_alpha);
  if (a == "LR") return std::make_unique<LogisticRegression>(options.lr);
  if (a == "KNN") return std::make_unique<NearestNeighbors>(options.knn_k);
  if (a == "NC") return std::make_unique<NearestCentroid>();
  throw InvalidArgument("unknown learning algorithm '" + std::string(algorithm) +
                        "' (supported: NB, LR, KNN, NC)");
}

}  // namespace divsel
