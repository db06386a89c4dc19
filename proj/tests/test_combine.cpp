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

#include <numeric>
#include <sstream>

#include "divsel/error.hpp"
#include "divsel/metrics.hpp"
#include "divsel/random.hpp"
#include "divsel/stacking.hpp"
#include "support/fixtures.hpp"

using namespace divsel;

namespace {

std::vector<ClassifierId> parse_all(std::initializer_list<const char*> names) {
  std::vector<ClassifierId> out;
  for (const char* n : names) out.push_back(ClassifierId::parse(n));
  return out;
}

std::vector<Label> alternating(std::size_t n, std::size_t c) {
  std::vector<Label> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<Label>(i % c);
  return t;
}

constexpr MetaKind kKinds[] = {MetaKind::LR, MetaKind::NB, MetaKind::Vote};

}  // namespace

TEST_SUITE("combine") {
  TEST_CASE("meta features are concatenated one-hot blocks") {
    const auto one = PredictionMatrix(parse_all({"A-X"}), 2, {0}, {1}, Split::Validation);
    CHECK(to_dense(meta_features(one, one.ids(), 2)) == std::vector<double>{0, 1});

    const auto two =
        PredictionMatrix(parse_all({"A-X", "B-X"}), 3, {0}, {0, 2}, Split::Validation);
    CHECK(to_dense(meta_features(two, two.ids(), 3)) == std::vector<double>{1, 0, 0, 0, 0, 1});
    const auto swapped = parse_all({"B-X", "A-X"});
    CHECK(to_dense(meta_features(two, swapped, 3)) == std::vector<double>{0, 0, 1, 1, 0, 0});

    const auto missing = parse_all({"C-X"});
    try {
      meta_features(two, missing, 3);
      FAIL("expected rejection");
    } catch (const InvalidArgument& e) {
      CHECK(std::string(e.what()).find("C-X") != std::string::npos);
    }
  }

  TEST_CASE("meta feature dimension is members x classes") {
    const auto pool = testing::redundancy_fixture(60, 1);
    const auto x = meta_features(pool.validation, pool.validation.ids(), 2);
    CHECK(x.dimension == 24);
    CHECK(x.rows.size() == 60);
    for (const auto& r : x.rows) CHECK(r.indices.size() == 12);
  }

  TEST_CASE("a single-member vote reproduces the member") {
    const auto pool = testing::redundancy_fixture(100, 2);
    const std::vector<ClassifierId> member{pool.validation.ids()[5]};
    const auto stack = fit_stack(pool.validation, member, MetaKind::Vote, 1);
    CHECK(predict_stack(stack, pool.test) == pool.test.column(5));
  }

  TEST_CASE("LR meta learner separates always-correct from always-wrong") {
    const auto truth = alternating(40, 2);
    const auto pm = testing::simulate_pool(truth, 2,
                                           {{"GOOD-LR", {}},
                                            {"BAD-LR", [] {
                                               std::set<std::size_t> all;
                                               for (std::size_t i = 0; i < 40; ++i) all.insert(i);
                                               return all;
                                             }()}});
    const auto stack = fit_stack(pm, pm.ids(), MetaKind::LR, 3);
    CHECK(evaluate(predict_stack(stack, pm), truth, 2).accuracy == 1.0);
    const auto& obj = stack.training_objective();
    CHECK(obj.size() == 501);
    for (std::size_t e = 1; e < obj.size(); ++e) CHECK(obj[e] <= obj[e - 1]);
  }

  TEST_CASE("vote is correct when any two of three members are") {
    const auto truth = alternating(30, 3);
    const auto pm = testing::simulate_pool(
        truth, 3, {{"A-X", {0, 3, 6, 9}}, {"B-X", {1, 4, 7, 10}}, {"C-X", {2, 5, 8, 11}}});
    const auto stack = fit_stack(pm, pm.ids(), MetaKind::Vote, 0);
    CHECK(predict_stack(stack, pm) == truth);
  }

  TEST_CASE("vote ties go to the smallest class") {
    const auto pm = PredictionMatrix(parse_all({"A-X", "B-X"}), 3, {0, 1, 2}, {2, 1, 1, 2, 0, 0},
                                     Split::Validation);
    const auto stack = fit_stack(pm, pm.ids(), MetaKind::Vote, 0);
    const std::vector<Label> row{2, 1};
    CHECK(stack.predict_row(row) == 1);
  }

  TEST_CASE("vote unanimity over random rows (property)") {
    const auto pm = testing::redundancy_fixture(50, 3).validation;
    const auto stack = fit_stack(pm, pm.ids(), MetaKind::Vote, 0);
    Rng rng(41);
    for (int i = 0; i < 1000; ++i) {
      const auto label = static_cast<Label>(rng.uniform_index(2));
      const std::vector<Label> row(pm.cols(), label);
      CHECK(stack.predict_row(row) == label);
    }
  }

  TEST_CASE("unanimous rows are followed by every meta learner on consistent data") {
    // Members are individually better than chance and never constant-wrong.
    const auto pool = testing::redundancy_fixture(300, 4);
    const auto members = parse_all({"CV-NB", "CV-LR", "CV-KNN"});
    for (auto kind : kKinds) {
      const auto stack = fit_stack(pool.validation, members, kind, 5);
      for (Label label = 0; label < 2; ++label) {
        const std::vector<Label> row(3, label);
        CAPTURE(to_string(kind));
        CHECK(stack.predict_row(row) == label);
      }
    }
  }

  TEST_CASE("NB meta probabilities normalize") {
    const auto pool = testing::redundancy_fixture(200, 5);
    const auto stack = fit_stack(pool.validation, pool.validation.ids(), MetaKind::NB, 1);
    for (std::size_t i = 0; i < pool.test.rows(); ++i) {
      const auto p = stack.probabilities(pool.test.row(i));
      CHECK(std::accumulate(p.begin(), p.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-9));
    }
  }

  TEST_CASE("single-member LR stack tracks the member's own accuracy") {
    const auto pool = testing::redundancy_fixture(500, 6);
    const std::vector<ClassifierId> member{pool.validation.ids()[8]};
    const auto stack = fit_stack(pool.validation, member, MetaKind::LR, 2);
    const double own = evaluate(pool.test.column(8), pool.test.truth(), 2).accuracy;
    const double stacked = evaluate(predict_stack(stack, pool.test), pool.test.truth(), 2).accuracy;
    CHECK(std::abs(own - stacked) <= 0.02);
  }

  TEST_CASE("fitting is deterministic and export round-trips") {
    const auto pool = testing::redundancy_fixture(120, 7);
    for (auto kind : kKinds) {
      const auto a = fit_stack(pool.validation, pool.validation.ids(), kind, 9);
      const auto b = fit_stack(pool.validation, pool.validation.ids(), kind, 9);
      CHECK(a == b);
      CHECK(a.to_json() == b.to_json());
      const auto back = StackedEnsemble::from_json(a.to_json());
      CHECK(back == a);
      CHECK(predict_stack(back, pool.test) == predict_stack(a, pool.test));
    }
  }

  TEST_CASE("fit preconditions") {
    const auto pm = PredictionMatrix(parse_all({"A-X"}), 3, {0, 1}, {0, 1}, Split::Validation);
    CHECK_THROWS_AS(fit_stack(pm, pm.ids(), MetaKind::LR, 0), InvalidArgument);
    const std::vector<ClassifierId> none;
    CHECK_THROWS_AS(fit_stack(testing::four_classifier_fixture(), none, MetaKind::LR, 0), InvalidArgument);
    CHECK_THROWS_AS(parse_meta_kind("RF"), InvalidArgument);
    CHECK(parse_meta_kind("vote") == MetaKind::Vote);
  }

  TEST_CASE("predicting needs every member column") {
    const auto pool = testing::redundancy_fixture(60, 8);
    const auto stack = fit_stack(pool.validation, pool.validation.ids(), MetaKind::NB, 0);
    const auto partial = parse_all({"CV-NB"});
    CHECK_THROWS_AS(predict_stack(stack, pool.test.select(partial)), InvalidArgument);
  }
}
