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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "divsel/diversity.hpp"
#include "divsel/linkage.hpp"
#include "divsel/metrics.hpp"
#include "divsel/types.hpp"

namespace divsel {

struct EnsembleCandidate {
  std::size_t level = 0;  // k
  Metric metric = Metric::Accuracy;
  std::vector<ClassifierId> members;  // one per cluster, in cluster-number order
  double mean_pairwise_distance = 0.0;
  std::optional<double> validation_score;  // stacked score, filled in after stacking
};

// Level sweep over the dendrogram: for every k in 1..P, cut into k clusters
// and keep the classifier with the highest `metric` in each cluster (ties go
// to the lexicographically smallest id). `scores` must name every leaf.
std::vector<EnsembleCandidate> hierarchy_select(const Dendrogram& z, const DissimilarityMatrix& m,
                                                const EvalReport& scores, Metric metric);

struct FinalRule {
  enum class Kind : std::uint8_t { MaxDiversity, MaxValidation, Weighted };
  Kind kind = Kind::MaxValidation;
  double alpha = 0.5;  // weight of the validation score under Weighted

  std::string str() const;
};

// "max-diversity", "max-validation", "weighted" or "weighted:<alpha>".
FinalRule parse_final_rule(std::string_view text);

// Index into `candidates` of the chosen ensemble. Ties on the primary key fall
// through to the other key, then to the smaller k, then to list order.
std::size_t choose_final_index(std::span<const EnsembleCandidate> candidates,
                               const FinalRule& rule);
EnsembleCandidate choose_final(std::span<const EnsembleCandidate> candidates,
                               const FinalRule& rule);

// W(k) for k = 1..P: summed distance over same-cluster pairs of fcluster(z, k).
std::vector<double> within_cluster_dispersion(const Dendrogram& z, const DissimilarityMatrix& m);

// Knee of a curve given as w[0] = W(1) .. w[P-1] = W(P): the interior k whose
// point lies farthest from the chord joining the end points. Ties (within
// 1e-12 relative) go to the smaller k. Needs P >= 3.
std::size_t elbow_knee(std::span<const double> w);

std::size_t elbow_select(const Dendrogram& z, const DissimilarityMatrix& m);

struct GroupMode {
  enum class Kind : std::uint8_t { Algorithm, Extractor, All };
  Kind kind = Kind::All;
  std::string token;
};

// A: every id with the given algorithm. B: every id with the given extractor. C: all ids.
std::vector<ClassifierId> group_members(std::span<const ClassifierId> pool, const GroupMode& mode);

// Accuracy of uniform random guessing: 1 / num_classes.
double random_baseline(std::size_t num_classes);

}  // namespace divsel
