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

#include "divsel/metrics.hpp"

#include <algorithm>
#include <cctype>

#include "divsel/error.hpp"

namespace divsel {

std::string_view to_string(Metric metric) noexcept {
  switch (metric) {
    case Metric::Accuracy:
      return "accuracy";
    case Metric::Precision:
      return "precision";
    case Metric::Recall:
      return "recall";
    case Metric::F1:
      return "f1";
  }
  return "unknown";
}

Metric parse_metric(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (Metric m : kAllMetrics) {
    if (lower == to_string(m)) return m;
  }
  throw InvalidArgument("unknown metric '" + std::string(text) +
                        "' (expected accuracy, precision, recall or f1)");
}

double Metrics::get(Metric metric) const noexcept {
  switch (metric) {
    case Metric::Accuracy:
      return accuracy;
    case Metric::Precision:
      return precision;
    case Metric::Recall:
      return recall;
    case Metric::F1:
      return f1;
  }
  return 0.0;
}

std::vector<std::size_t> confusion_matrix(std::span<const Label> predicted,
                                          std::span<const Label> truth, std::size_t num_classes) {
  if (predicted.size() != truth.size()) {
    throw InvalidArgument("prediction and truth lengths differ");
  }
  std::vector<std::size_t> cm(num_classes * num_classes, 0);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (predicted[i] >= num_classes || truth[i] >= num_classes) {
      throw InvalidArgument("label out of range at position " + std::to_string(i));
    }
    ++cm[truth[i] * num_classes + predicted[i]];
  }
  return cm;
}

Metrics evaluate(std::span<const Label> predicted, std::span<const Label> truth,
                 std::size_t num_classes) {
  if (truth.empty()) throw InvalidArgument("cannot evaluate zero instances");
  if (num_classes == 0) throw InvalidArgument("num_classes must be positive");
  const auto cm = confusion_matrix(predicted, truth, num_classes);

  std::size_t correct = 0;
  double precision_sum = 0.0;
  double recall_sum = 0.0;
  double f1_sum = 0.0;
  for (std::size_t c = 0; c < num_classes; ++c) {
    const std::size_t tp = cm[c * num_classes + c];
    std::size_t predicted_c = 0;
    std::size_t actual_c = 0;
    for (std::size_t o = 0; o < num_classes; ++o) {
      predicted_c += cm[o * num_classes + c];
      actual_c += cm[c * num_classes + o];
    }
    correct += tp;
    const double p = predicted_c == 0 ? 0.0 : static_cast<double>(tp) / predicted_c;
    const double r = actual_c == 0 ? 0.0 : static_cast<double>(tp) / actual_c;
    precision_sum += p;
    recall_sum += r;
    f1_sum += (p + r) == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
  }
  const double k = static_cast<double>(num_classes);
  return Metrics{static_cast<double>(correct) / static_cast<double>(truth.size()),
                 precision_sum / k, recall_sum / k, f1_sum / k};
}

const EvalEntry* EvalReport::find(std::string_view name) const noexcept {
  for (const auto& e : entries) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

}  // namespace divsel
