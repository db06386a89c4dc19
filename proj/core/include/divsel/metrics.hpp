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

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "divsel/types.hpp"

namespace divsel {

enum class Metric : std::uint8_t { Accuracy, Precision, Recall, F1 };

inline constexpr std::array<Metric, 4> kAllMetrics{Metric::Accuracy, Metric::Precision,
                                                   Metric::Recall, Metric::F1};

std::string_view to_string(Metric metric) noexcept;
// Accepts "accuracy", "precision", "recall", "f1" (case-insensitive).
Metric parse_metric(std::string_view text);

// Accuracy plus macro-averaged precision, recall and F1.
struct Metrics {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  double get(Metric metric) const noexcept;
  friend bool operator==(const Metrics&, const Metrics&) = default;
};

// Per-class precision/recall/F1 are 0 when their denominator is 0; macro
// values are unweighted means over all `num_classes` classes.
Metrics evaluate(std::span<const Label> predicted, std::span<const Label> truth,
                 std::size_t num_classes);

// Row-major num_classes x num_classes counts, [truth][predicted].
std::vector<std::size_t> confusion_matrix(std::span<const Label> predicted,
                                          std::span<const Label> truth, std::size_t num_classes);

struct EvalEntry {
  std::string name;
  std::vector<ClassifierId> members;
  Metrics metrics;
};

struct EvalReport {
  std::vector<EvalEntry> entries;

  const EvalEntry* find(std::string_view name) const noexcept;
};

}  // namespace divsel
