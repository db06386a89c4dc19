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

#include "fixtures.hpp"

#include <algorithm>
#include <numeric>

#include "divsel/random.hpp"

namespace divsel::testing {

PredictionMatrix simulate_pool(const std::vector<Label>& truth, std::size_t num_classes,
                               const std::vector<SimulatedClassifier>& classifiers, Split split) {
  std::vector<ClassifierId> ids;
  for (const auto& c : classifiers) ids.push_back(ClassifierId::parse(c.id));
  std::vector<Label> predictions;
  predictions.reserve(truth.size() * classifiers.size());
  for (std::size_t i = 0; i < truth.size(); ++i) {
    for (const auto& c : classifiers) {
      const bool wrong = c.errors.count(i) > 0;
      predictions.push_back(wrong ? static_cast<Label>((truth[i] + 1) % num_classes) : truth[i]);
    }
  }
  return PredictionMatrix(std::move(ids), num_classes, truth, std::move(predictions), split);
}

PredictionMatrix four_classifier_fixture() {
  std::vector<Label> truth(20);
  for (std::size_t i = 0; i < truth.size(); ++i) truth[i] = static_cast<Label>(i % 2);
  auto range = [](std::size_t first, std::size_t last) {
    std::set<std::size_t> s;
    for (std::size_t i = first; i <= last; ++i) s.insert(i);
    return s;
  };
  return simulate_pool(truth, 2,
                       {{"GLOVE-LR", range(0, 5)},
                        {"CV-NB", range(0, 6)},
                        {"BERT-SVM", range(10, 11)},
                        {"TFIDF-SVM", range(14, 16)}});
}

namespace {

PredictionMatrix redundant_split(std::size_t rows, std::uint64_t seed, Split split) {
  Rng rng(seed);
  std::vector<Label> truth(rows);
  for (auto& t : truth) t = static_cast<Label>(rng.uniform_index(2));
  std::vector<std::size_t> order(rows);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);

  const double rates[3] = {0.15, 0.20, 0.25};
  const char* extractors[4] = {"CV", "TFIDF", "HASHED", "GLOVE"};
  const char* algorithms[3] = {"NB", "LR", "KNN"};
  std::vector<SimulatedClassifier> classifiers;
  std::size_t offset = 0;
  for (std::size_t g = 0; g < 3; ++g) {
    const auto count = static_cast<std::size_t>(rates[g] * static_cast<double>(rows) + 0.5);
    std::set<std::size_t> errors(order.begin() + static_cast<std::ptrdiff_t>(offset),
                                 order.begin() + static_cast<std::ptrdiff_t>(offset + count));
    offset += count;
    for (const char* e : extractors) {
      classifiers.push_back({std::string(e) + "-" + algorithms[g], errors});
    }
  }
  return simulate_pool(truth, 2, classifiers, split);
}

}  // namespace

RedundantPool redundancy_fixture(std::size_t rows, std::uint64_t seed) {
  RedundantPool out{redundant_split(rows, derive_seed(seed, "validation"), Split::Validation),
                    redundant_split(rows, derive_seed(seed, "test"), Split::Test),
                    {}};
  for (std::size_t j = 0; j < 12; ++j) out.group_of.push_back(j / 4);
  return out;
}

std::vector<double> random_symmetric(std::size_t p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> m(p * p, 0.0);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i + 1; j < p; ++j) {
      m[i * p + j] = m[j * p + i] = rng.uniform01();
    }
  }
  return m;
}

}  // namespace divsel::testing
