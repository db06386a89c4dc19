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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "divsel/diversity.hpp"
#include "divsel/error.hpp"
#include "divsel/linkage.hpp"
#include "divsel/pipeline.hpp"
#include "divsel/random.hpp"
#include "divsel/selection.hpp"
#include "support/fixtures.hpp"

using namespace divsel;

namespace {

std::set<std::string> names(const std::vector<ClassifierId>& ids) {
  std::set<std::string> out;
  for (const auto& id : ids) out.insert(id.str());
  return out;
}

EvalReport scores_from(const std::vector<ClassifierId>& ids, const std::vector<double>& values) {
  EvalReport r;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const double v = values[i];
    r.entries.push_back({ids[i].str(), {ids[i]}, Metrics{v, v, v, v}});
  }
  return r;
}

EnsembleCandidate candidate(std::size_t k, double diversity, double score) {
  EnsembleCandidate c;
  c.level = k;
  c.mean_pairwise_distance = diversity;
  c.validation_score = score;
  return c;
}

std::vector<ClassifierId> ids(std::size_t p) {
  std::vector<ClassifierId> out;
  for (std::size_t i = 0; i < p; ++i) out.emplace_back("E" + std::to_string(i), "A");
  return out;
}

// Perpendicular distance from (k, w) to the chord between the end points.
double chord_distance(const std::vector<double>& w, std::size_t k) {
  const double x1 = 1.0;
  const double y1 = w.front();
  const double x2 = static_cast<double>(w.size());
  const double y2 = w.back();
  const double x0 = static_cast<double>(k);
  const double y0 = w[k - 1];
  return std::abs((y2 - y1) * x0 - (x2 - x1) * y0 + x2 * y1 - y2 * x1) /
         std::hypot(y2 - y1, x2 - x1);
}

}  // namespace

TEST_SUITE("selection") {
  TEST_CASE("four-classifier pool: k = 3 keeps GLOVE-LR over CV-NB") {
    const auto pm = testing::four_classifier_fixture();
    const auto m = dissimilarity_matrix(pm);
    const auto z = linkage(m);
    const auto scores = evaluate_columns(pm);
    CHECK(scores.find("GLOVE-LR")->metrics.accuracy > scores.find("CV-NB")->metrics.accuracy);
    const auto candidates = hierarchy_select(z, m, scores, Metric::Accuracy);
    CHECK(names(candidates[2].members) ==
          std::set<std::string>{"BERT-SVM", "TFIDF-SVM", "GLOVE-LR"});
  }

  TEST_CASE("k = 1 is the global best and k = P the whole pool") {
    const auto pool = ids(5);
    const auto m = DissimilarityMatrix(pool, testing::random_symmetric(5, 4));
    const auto z = linkage(m);
    const auto scores = scores_from(pool, {0.3, 0.9, 0.5, 0.7, 0.1});
    const auto c = hierarchy_select(z, m, scores, Metric::Accuracy);
    REQUIRE(c.size() == 5);
    CHECK(c[0].members == std::vector<ClassifierId>{pool[1]});
    CHECK(c[0].mean_pairwise_distance == 0.0);
    CHECK(names(c[4].members) == names(pool));
  }

  TEST_CASE("score ties go to the smallest id") {
    const auto pool = ids(3);
    const auto m = DissimilarityMatrix(pool, testing::random_symmetric(3, 5));
    const auto c = hierarchy_select(linkage(m), m, scores_from(pool, {0.5, 0.5, 0.5}),
                                    Metric::Accuracy);
    CHECK(c[0].members == std::vector<ClassifierId>{pool[0]});
  }

  TEST_CASE("missing scores are rejected") {
    const auto pool = ids(3);
    const auto m = DissimilarityMatrix(pool, testing::random_symmetric(3, 6));
    auto scores = scores_from(pool, {0.1, 0.2, 0.3});
    scores.entries.pop_back();
    CHECK_THROWS_AS(hierarchy_select(linkage(m), m, scores, Metric::Accuracy), InvalidArgument);
  }

  TEST_CASE("candidate count, size, and per-cluster optimality (property)") {
    Rng rng(31);
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
      const std::size_t p = 2 + trial % 9;
      const auto pool = ids(p);
      const auto m = DissimilarityMatrix(pool, testing::random_symmetric(p, 40 + trial));
      const auto z = linkage(m, static_cast<LinkageMethod>(trial % 4));
      std::vector<double> values(p);
      for (auto& v : values) v = static_cast<double>(rng.uniform_index(5)) / 4.0;
      const auto c = hierarchy_select(z, m, scores_from(pool, values), Metric::F1);
      REQUIRE(c.size() == p);
      for (std::size_t k = 1; k <= p; ++k) {
        const auto& cand = c[k - 1];
        CHECK(cand.level == k);
        CHECK(cand.metric == Metric::F1);
        CHECK(cand.members.size() == k);
        CHECK(names(cand.members).size() == k);
        const auto assignment = fcluster(z, k);
        for (const auto& member : cand.members) {
          const auto mi = m.index_of(member);
          for (std::size_t j = 0; j < p; ++j) {
            if (assignment[j] == assignment[mi]) CHECK(values[j] <= values[mi]);
          }
        }
      }
    }
  }

  TEST_CASE("scaling the scores by a positive constant changes no member set (property)") {
    Rng rng(32);
    for (std::uint64_t trial = 0; trial < 50; ++trial) {
      const std::size_t p = 3 + trial % 6;
      const auto pool = ids(p);
      const auto m = DissimilarityMatrix(pool, testing::random_symmetric(p, 70 + trial));
      const auto z = linkage(m);
      std::vector<double> values(p);
      for (auto& v : values) v = rng.uniform01();
      auto scaled = values;
      for (auto& v : scaled) v *= 0.25;
      const auto a = hierarchy_select(z, m, scores_from(pool, values), Metric::Accuracy);
      const auto b = hierarchy_select(z, m, scores_from(pool, scaled), Metric::Accuracy);
      for (std::size_t k = 0; k < p; ++k) CHECK(a[k].members == b[k].members);
    }
  }

  TEST_CASE("nested cuts give nested candidates") {
    // Under step-count cuts a cluster's best member stays the best of the
    // sub-cluster that contains it, so candidate k is always contained in
    // candidate k + 1. Growth is by exactly one member per level.
    for (std::uint64_t trial = 0; trial < 50; ++trial) {
      const std::size_t p = 3 + trial % 6;
      const auto pool = ids(p);
      const auto m = DissimilarityMatrix(pool, testing::random_symmetric(p, 300 + trial));
      Rng rng(trial);
      std::vector<double> values(p);
      for (auto& v : values) v = rng.uniform01();
      const auto c = hierarchy_select(linkage(m), m, scores_from(pool, values), Metric::Accuracy);
      for (std::size_t k = 1; k < p; ++k) {
        const auto small = names(c[k - 1].members);
        const auto large = names(c[k].members);
        CHECK(std::includes(large.begin(), large.end(), small.begin(), small.end()));
      }
    }
  }

  TEST_CASE("final choice: single candidate and tie chains") {
    const std::vector<EnsembleCandidate> one{candidate(3, 0.4, 0.7)};
    for (auto kind : {FinalRule::Kind::MaxDiversity, FinalRule::Kind::MaxValidation,
                      FinalRule::Kind::Weighted}) {
      CHECK(choose_final_index(one, {kind, 0.5}) == 0);
    }
    const std::vector<EnsembleCandidate> tie{candidate(1, 0.5, 0.8), candidate(2, 0.5, 0.9)};
    CHECK(choose_final_index(tie, {FinalRule::Kind::MaxDiversity}) == 1);

    const std::vector<EnsembleCandidate> v_tie{candidate(1, 0.3, 0.9), candidate(2, 0.6, 0.9)};
    CHECK(choose_final_index(v_tie, {FinalRule::Kind::MaxValidation}) == 1);

    const std::vector<EnsembleCandidate> full_tie{candidate(4, 0.5, 0.9), candidate(2, 0.5, 0.9)};
    CHECK(choose_final_index(full_tie, {FinalRule::Kind::MaxValidation}) == 1);

    const std::vector<EnsembleCandidate> weighted{candidate(1, 0.2, 1.0), candidate(2, 0.9, 0.6)};
    CHECK(choose_final_index(weighted, {FinalRule::Kind::Weighted, 0.9}) == 0);
    CHECK(choose_final_index(weighted, {FinalRule::Kind::Weighted, 0.1}) == 1);
    CHECK_THROWS_AS(choose_final_index(std::vector<EnsembleCandidate>{}, {}), InvalidArgument);
  }

  TEST_CASE("final rule text forms") {
    CHECK(parse_final_rule("max-diversity").kind == FinalRule::Kind::MaxDiversity);
    CHECK(parse_final_rule("MAX-VALIDATION").kind == FinalRule::Kind::MaxValidation);
    const auto w = parse_final_rule("weighted:0.25");
    CHECK(w.kind == FinalRule::Kind::Weighted);
    CHECK(w.alpha == 0.25);
    CHECK(w.str() == "WEIGHTED(0.25)");
    CHECK_THROWS_AS(parse_final_rule("weighted:1.5"), InvalidArgument);
    CHECK_THROWS_AS(parse_final_rule("best"), InvalidArgument);
  }

  TEST_CASE("elbow: linear dispersion picks k = 2") {
    const std::vector<double> w{10, 8, 6, 4, 2, 0};
    CHECK(elbow_knee(w) == 2);
  }

  TEST_CASE("elbow: a sharp knee at k = 3") {
    const std::vector<double> w{10, 7, 4, 3.5, 3, 2.5, 2};
    std::size_t best = 2;
    for (std::size_t k = 3; k < w.size(); ++k) {
      if (chord_distance(w, k) > chord_distance(w, best)) best = k;
    }
    CHECK(best == 3);
    CHECK(elbow_knee(w) == 3);
  }

  TEST_CASE("elbow: two exact blobs give k = 2") {
    std::vector<double> values(36, 1.0);
    for (std::size_t i = 0; i < 6; ++i) {
      for (std::size_t j = 0; j < 6; ++j) {
        if (i == j || (i < 3) == (j < 3)) values[i * 6 + j] = 0.0;
      }
    }
    const DissimilarityMatrix m(ids(6), values);
    const auto z = linkage(m);
    const auto w = within_cluster_dispersion(z, m);
    CHECK(w.front() == 9.0);
    CHECK(w[1] == 0.0);
    CHECK(elbow_select(z, m) == 2);
  }

  TEST_CASE("elbow needs at least three classifiers") {
    const DissimilarityMatrix m(ids(2), {0, 0.5, 0.5, 0});
    CHECK_THROWS_AS(elbow_select(linkage(m), m), InvalidArgument);
    const std::vector<double> two{1.0, 0.0};
    CHECK_THROWS_AS(elbow_knee(two), InvalidArgument);
  }

  TEST_CASE("group heuristics") {
    const std::vector<std::string> five{"CV", "TFIDF", "W2V", "GLOVE", "FAST"};
    const std::vector<std::string> eight{"NB", "LR", "KNN", "NC", "SVM", "RF", "ET", "MLP"};
    const auto pool = pool_ids(five, eight);
    CHECK(group_members(pool, {GroupMode::Kind::All, ""}).size() == 40);
    CHECK(group_members(pool, {GroupMode::Kind::Algorithm, "LR"}).size() == 5);
    CHECK(group_members(pool, {GroupMode::Kind::Extractor, "cv"}).size() == 8);
    CHECK_THROWS_AS(group_members(pool, {GroupMode::Kind::Algorithm, "BERT"}), InvalidArgument);
  }

  TEST_CASE("random baseline") {
    CHECK(random_baseline(2) == 0.5);
    CHECK(random_baseline(4) == 0.25);
    CHECK(std::round(random_baseline(6) * 1000.0) / 1000.0 == 0.167);
    CHECK_THROWS_AS(random_baseline(1), InvalidArgument);
  }
}
