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

#include "divsel/softmax.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "divsel/error.hpp"

namespace divsel {

std::vector<double> SoftmaxModel::scores(const SparseRow& x) const {
  const std::size_t stride = dimension + 1;
  std::vector<double> s(num_classes);
  for (std::size_t c = 0; c < num_classes; ++c) {
    const double* w = weights.data() + c * stride;
    double z = w[dimension];
    for (std::size_t k = 0; k < x.indices.size(); ++k) z += w[x.indices[k]] * x.values[k];
    s[c] = z;
  }
  return s;
}

std::vector<double> SoftmaxModel::probabilities(const SparseRow& x) const {
  auto s = scores(x);
  const double top = *std::max_element(s.begin(), s.end());
  double total = 0.0;
  for (auto& v : s) {
    v = std::exp(v - top);
    total += v;
  }
  for (auto& v : s) v /= total;
  return s;
}

Label SoftmaxModel::predict(const SparseRow& x) const {
  const auto s = scores(x);
  return static_cast<Label>(std::max_element(s.begin(), s.end()) - s.begin());
}

double softmax_objective(const SoftmaxModel& model, const FeatureMatrix& x,
                         std::span<const Label> y, double l2) {
  double loss = 0.0;
  for (std::size_t i = 0; i < x.rows.size(); ++i) {
    const auto s = model.scores(x.rows[i]);
    const double top = *std::max_element(s.begin(), s.end());
    double total = 0.0;
    for (double v : s) total += std::exp(v - top);
    loss += top + std::log(total) - s[y[i]];
  }
  loss /= static_cast<double>(x.rows.size());
  double penalty = 0.0;
  const std::size_t stride = model.dimension + 1;
  for (std::size_t c = 0; c < model.num_classes; ++c) {
    for (std::size_t d = 0; d < model.dimension; ++d) {
      const double w = model.weights[c * stride + d];
      penalty += w * w;
    }
  }
  return loss + 0.5 * l2 * penalty;
}

SoftmaxFit fit_softmax(const FeatureMatrix& x, std::span<const Label> y, std::size_t num_classes,
                       const SoftmaxOptions& options) {
  if (x.rows.empty()) throw InvalidArgument("softmax regression needs at least one row");
  if (x.rows.size() != y.size()) throw InvalidArgument("feature and label counts differ");
  if (num_classes < 2) throw InvalidArgument("softmax regression needs at least 2 classes");
  if (!(options.step > 0.0)) throw InvalidArgument("step size must be positive");
  for (Label label : y) {
    if (label >= num_classes) throw InvalidArgument("label out of range");
  }

  SoftmaxFit fit;
  auto& model = fit.model;
  model.num_classes = num_classes;
  model.dimension = x.dimension;
  const std::size_t stride = x.dimension + 1;
  model.weights.assign(num_classes * stride, 0.0);

  const double n = static_cast<double>(x.rows.size());
  std::vector<double> grad(model.weights.size());
  double current = softmax_objective(model, x, y, options.l2);
  fit.objective.push_back(current);

  for (std::size_t epoch = 0; epoch < options.epochs; ++epoch) {
    std::fill(grad.begin(), grad.end(), 0.0);
    for (std::size_t i = 0; i < x.rows.size(); ++i) {
      const auto& row = x.rows[i];
      auto p = model.probabilities(row);
      p[y[i]] -= 1.0;
      for (std::size_t c = 0; c < num_classes; ++c) {
        double* g = grad.data() + c * stride;
        const double r = p[c] / n;
        for (std::size_t k = 0; k < row.indices.size(); ++k) g[row.indices[k]] += r * row.values[k];
        g[x.dimension] += r;
      }
    }
    for (std::size_t c = 0; c < num_classes; ++c) {
      for (std::size_t d = 0; d < x.dimension; ++d) {
        grad[c * stride + d] += options.l2 * model.weights[c * stride + d];
      }
    }

    const auto previous = model.weights;
    for (std::size_t k = 0; k < grad.size(); ++k) model.weights[k] -= options.step * grad[k];
    const double next = softmax_objective(model, x, y, options.l2);
    if (!std::isfinite(next) || next > current + 1e-12 * (1.0 + std::abs(current))) {
      model.weights = previous;
      fit.diverged = true;
      std::ostringstream msg;
      msg << "objective rose from " << current << " to " << next << " at epoch " << epoch + 1
          << " with step " << options.step;
      fit.diagnostic = msg.str();
      break;
    }
    current = next;
    fit.objective.push_back(current);
  }
  return fit;
}

}  // namespace divsel
