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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "divsel/diversity.hpp"
#include "divsel/linkage.hpp"
#include "divsel/metrics.hpp"
#include "divsel/pipeline.hpp"
#include "divsel/random.hpp"
#include "divsel/selection.hpp"
#include "divsel/stacking.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/temp_dir.hpp"

namespace fs = std::filesystem;
using namespace divsel;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first failure; later checks still run so the detail is useful.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && outcome_.pass) {
      outcome_.pass = false;
      outcome_.detail = what;
    }
  }
  void note(const std::string& detail) {
    if (outcome_.pass) outcome_.detail = detail;
  }
  Outcome result() const { return outcome_; }

 private:
  Outcome outcome_;
};

std::string fmt(const char* format, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, value);
  return buf;
}

std::vector<ClassifierId> leaf_ids(std::size_t p) {
  std::vector<ClassifierId> ids;
  for (std::size_t i = 0; i < p; ++i) ids.emplace_back("L" + std::to_string(i), "X");
  return ids;
}

constexpr LinkageMethod kMethods[] = {LinkageMethod::Single, LinkageMethod::Complete,
                                      LinkageMethod::Average, LinkageMethod::Centroid};

std::vector<Dendrogram> oracle_dendrograms() {
  std::vector<Dendrogram> out;
  for (std::uint64_t trial = 0; trial < 200; ++trial) {
    const std::size_t p = 2 + trial % 7;
    const auto values = testing::random_symmetric(p, derive_seed(77, trial));
    const DissimilarityMatrix m(leaf_ids(p), values);
    for (auto method : kMethods) out.push_back(linkage(m, method));
  }
  return out;
}

Outcome criterion_double_fault() {
  Checker c;
  Rng rng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng.uniform_index(50);
    const std::size_t classes = 2 + rng.uniform_index(4);
    std::vector<Label> a(n);
    std::vector<Label> b(n);
    std::vector<Label> t(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = static_cast<Label>(rng.uniform_index(classes));
      b[i] = static_cast<Label>(rng.uniform_index(classes));
      t[i] = static_cast<Label>(rng.uniform_index(classes));
    }
    c.expect(double_fault(a, b, t) == testing::enumerate_double_fault(a, b, t),
             "mismatch at trial " + std::to_string(trial));
  }
  c.note("1000 triples, exact equality");
  return c.result();
}

Outcome criterion_linkage_oracle() {
  Checker c;
  std::size_t steps = 0;
  for (std::uint64_t trial = 0; trial < 200; ++trial) {
    const std::size_t p = 2 + trial % 7;
    const auto values = testing::random_symmetric(p, derive_seed(77, trial));
    const DissimilarityMatrix m(leaf_ids(p), values);
    for (auto method : kMethods) {
      const auto got = linkage(m, method);
      const auto want = testing::brute_force_linkage(values, p, method);
      for (std::size_t s = 0; s < want.size(); ++s) {
        const auto& g = got.merges()[s];
        const bool same_set = g.left == want[s].left && g.right == want[s].right;
        c.expect(same_set && std::abs(g.distance - want[s].distance) <= 1e-12,
                 "trial " + std::to_string(trial) + " " + std::string(to_string(method)) +
                     " step " + std::to_string(s));
        ++steps;
      }
    }
  }
  c.note("200 matrices x 4 methods, " + std::to_string(steps) + " merge steps");
  return c.result();
}

Outcome criterion_fcluster() {
  Checker c;
  std::size_t cuts = 0;
  for (const auto& z : oracle_dendrograms()) {
    const std::size_t p = z.leaf_count();
    std::vector<std::size_t> previous;
    for (std::size_t k = 1; k <= p; ++k) {
      const auto a = fcluster(z, k);
      const std::set<std::size_t> distinct(a.begin(), a.end());
      c.expect(distinct.size() == k && *distinct.begin() == 1 && *distinct.rbegin() == k,
               "wrong cluster count at k=" + std::to_string(k));
      if (k > 1) {
        for (std::size_t i = 0; i < p; ++i) {
          for (std::size_t j = 0; j < p; ++j) {
            if (a[i] == a[j]) c.expect(previous[i] == previous[j], "refinement broken");
          }
        }
      }
      previous = a;
      ++cuts;
    }
  }
  c.note(std::to_string(cuts) + " cuts checked");
  return c.result();
}

Outcome criterion_four_classifier() {
  Checker c;
  const auto pm = testing::four_classifier_fixture();
  const auto scores = evaluate_columns(pm);
  c.expect(scores.find("GLOVE-LR")->metrics.accuracy > scores.find("CV-NB")->metrics.accuracy,
           "fixture accuracies out of order");
  const auto m = dissimilarity_matrix(pm);
  const auto candidates = hierarchy_select(linkage(m), m, scores, Metric::Accuracy);
  std::set<std::string> got;
  for (const auto& id : candidates[2].members) got.insert(id.str());
  const std::set<std::string> want{"BERT-SVM", "TFIDF-SVM", "GLOVE-LR"};
  c.expect(got == want, "k=3 members differ");
  c.note("k=3 -> {BERT-SVM, TFIDF-SVM, GLOVE-LR}");
  return c.result();
}

Outcome criterion_baseline() {
  Checker c;
  const auto two = fmt("%.3f", random_baseline(2));
  const auto six = fmt("%.3f", random_baseline(6));
  c.expect(two == "0.500", "C=2 gave " + two);
  c.expect(six == "0.167", "C=6 gave " + six);
  c.note("C=2 -> " + two + ", C=6 -> " + six);
  return c.result();
}

Outcome criterion_redundancy() {
  Checker c;
  const auto pool = testing::redundancy_fixture(600, 2024);
  SelectionConfig config;
  config.rule = {FinalRule::Kind::MaxValidation, 0.5};
  const auto result = run_selection(pool.validation, config);
  const auto& final_c = result.final_candidate();
  c.expect(final_c.members.size() <= 4,
           "final candidate has " + std::to_string(final_c.members.size()) + " members");

  const auto selected = evaluate_stack(result.final_stack, pool.test).metrics.accuracy;
  const auto all = fit_stack(pool.validation, pool.validation.ids(), config.meta, config.seed,
                             config.stack);
  const auto group_c = evaluate_stack(all, pool.test).metrics.accuracy;
  c.expect(selected >= group_c - 0.02,
           "selected " + fmt("%.4f", selected) + " vs Group C " + fmt("%.4f", group_c));

  std::map<std::size_t, int> per_group;
  for (const auto& id : result.candidates[2].members) {
    ++per_group[pool.group_of[*pool.validation.index_of(id)]];
  }
  c.expect(per_group.size() == 3 && per_group[0] == 1 && per_group[1] == 1 && per_group[2] == 1,
           "k=3 candidate does not take one member per group");
  c.note("final k=" + std::to_string(final_c.level) + ", selected test acc " + fmt("%.4f", selected) +
         ", Group C " + fmt("%.4f", group_c));
  return c.result();
}

Outcome criterion_stacking() {
  Checker c;
  std::vector<Label> truth(100);
  std::set<std::size_t> everywhere;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    truth[i] = static_cast<Label>(i % 2);
    everywhere.insert(i);
  }
  const auto pm =
      testing::simulate_pool(truth, 2, {{"RIGHT-LR", {}}, {"WRONG-LR", everywhere}});
  StackOptions options;
  options.lr.epochs = 500;
  const auto stack = fit_stack(pm, pm.ids(), MetaKind::LR, 1, options);
  const double acc = evaluate(predict_stack(stack, pm), truth, 2).accuracy;
  c.expect(acc == 1.0, "LR meta validation accuracy " + fmt("%.4f", acc));

  Rng rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t classes = 2 + rng.uniform_index(5);
    const std::size_t members = 1 + rng.uniform_index(8);
    std::vector<ClassifierId> ids;
    for (std::size_t j = 0; j < members; ++j) ids.emplace_back("M" + std::to_string(j), "X");
    std::vector<Label> t(classes);
    std::vector<Label> p(classes * members);
    for (std::size_t i = 0; i < classes; ++i) t[i] = static_cast<Label>(i);
    for (auto& v : p) v = static_cast<Label>(rng.uniform_index(classes));
    const PredictionMatrix v(ids, classes, t, p, Split::Validation);
    const auto vote = fit_stack(v, ids, MetaKind::Vote, 0);
    const auto label = static_cast<Label>(rng.uniform_index(classes));
    const std::vector<Label> row(members, label);
    c.expect(vote.predict_row(row) == label, "VOTE broke unanimity at trial " +
                                                 std::to_string(trial));
  }
  c.note("LR meta accuracy 1.0 in 500 epochs; 1000 unanimous rows");
  return c.result();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Report text with the generated_at line removed.
std::string without_timestamp(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string out;
  while (std::getline(in, line)) {
    if (line.find("\"generated_at\"") != std::string::npos) continue;
    out += line + "\n";
  }
  return out;
}

struct ToyRun {
  int code = 0;
  double seconds = 0.0;
  std::string report;
  std::string error;
};

ToyRun toy_run(const fs::path& out_dir) {
  const auto corpus = (fs::path(DIVSEL_SOURCE_DIR) / "data" / "toy_corpus.csv").string();
  std::ostringstream out;
  std::ostringstream err;
  const auto start = std::chrono::steady_clock::now();
  const int code = cli::run({"run", "--corpus", corpus, "--seed", "42", "--out", out_dir.string()},
                            out, err);
  const auto stop = std::chrono::steady_clock::now();
  ToyRun r;
  r.code = code;
  r.seconds = std::chrono::duration<double>(stop - start).count();
  r.error = err.str();
  if (code == 0) r.report = slurp(out_dir / "run_report.json");
  return r;
}

Outcome criterion_toy_run() {
  Checker c;
  testing::TempDir dir("acceptance-toy");
  const auto r = toy_run(dir.path());
  c.expect(r.code == 0, "divsel run failed: " + r.error);
  if (r.code != 0) return c.result();
  c.expect(r.seconds < 60.0, "took " + fmt("%.1f", r.seconds) + " s");
  const auto report = nlohmann::json::parse(r.report);
  const double acc = report["test"]["metrics"]["accuracy"].get<double>();
  const double baseline = report["test"]["random_baseline"].get<double>();
  c.expect(acc > 0.80, "final TEST accuracy " + fmt("%.4f", acc));
  c.expect(baseline == 0.5, "baseline " + fmt("%.3f", baseline));
  c.expect(report["pool"].size() == 12, "pool entries: " + std::to_string(report["pool"].size()));
  c.expect(report["candidates"].size() == 12,
           "candidates: " + std::to_string(report["candidates"].size()));
  c.note("TEST accuracy " + fmt("%.4f", acc) + " (baseline 0.50), 12 pool entries, 12 candidates, " +
         fmt("%.2f", r.seconds) + " s");
  return c.result();
}

Outcome criterion_determinism() {
  Checker c;
  testing::TempDir dir("acceptance-det");
  const auto first = toy_run(dir.path());
  const auto first_eval = slurp(dir.path() / "evaluation.json");
  const auto second = toy_run(dir.path());
  const auto second_eval = slurp(dir.path() / "evaluation.json");
  c.expect(first.code == 0 && second.code == 0, "a run failed");
  c.expect(without_timestamp(first.report) == without_timestamp(second.report),
           "run reports differ outside generated_at");
  c.expect(without_timestamp(first_eval) == without_timestamp(second_eval),
           "evaluation reports differ outside generated_at");
  c.note("run_report.json and evaluation.json identical modulo generated_at");
  return c.result();
}

Outcome criterion_metrics() {
  Checker c;
  Rng rng(10);
  int zero_denominator_cases = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t classes = 2 + rng.uniform_index(3);
    const std::size_t n = 1 + rng.uniform_index(20);
    // Every other case predicts from a reduced label range so some class is
    // never predicted.
    const std::size_t predicted_range = trial % 2 == 0 ? classes - 1 : classes;
    std::vector<Label> truth(n);
    std::vector<Label> pred(n);
    for (std::size_t i = 0; i < n; ++i) {
      truth[i] = static_cast<Label>(rng.uniform_index(classes));
      pred[i] = static_cast<Label>(rng.uniform_index(predicted_range));
    }
    std::set<Label> seen_pred(pred.begin(), pred.end());
    std::set<Label> seen_truth(truth.begin(), truth.end());
    if (seen_pred.size() < classes || seen_truth.size() < classes) ++zero_denominator_cases;

    const auto got = evaluate(pred, truth, classes);
    const auto want = testing::hand_metrics(pred, truth, classes);
    const bool ok = std::abs(got.accuracy - want.accuracy) <= 1e-12 &&
                    std::abs(got.precision - want.precision) <= 1e-12 &&
                    std::abs(got.recall - want.recall) <= 1e-12 &&
                    std::abs(got.f1 - want.f1) <= 1e-12;
    c.expect(ok, "mismatch at case " + std::to_string(trial));
  }
  c.expect(zero_denominator_cases > 0, "no zero-denominator case generated");
  c.note("50 cases, " + std::to_string(zero_denominator_cases) + " with zero denominators");
  return c.result();
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* name;
    std::function<Outcome()> run;
    double budget_seconds;  // 0: no runtime bound
  };
  const std::vector<Criterion> criteria{
      {1, "double-fault exactness", criterion_double_fault, 1.0},
      {2, "clustering oracle equivalence", criterion_linkage_oracle, 30.0},
      {3, "f_cluster contract", criterion_fcluster, 0.0},
      {4, "four-classifier golden test", criterion_four_classifier, 0.0},
      {5, "baseline formula", criterion_baseline, 0.0},
      {6, "redundancy fixture", criterion_redundancy, 10.0},
      {7, "stacking sanity", criterion_stacking, 5.0},
      {8, "end-to-end toy run", criterion_toy_run, 60.0},
      {9, "determinism", criterion_determinism, 0.0},
      {10, "metric exactness", criterion_metrics, 0.0},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (outcome.pass && criterion.budget_seconds > 0.0 && seconds >= criterion.budget_seconds) {
      outcome = {false, "exceeded " + fmt("%.0f", criterion.budget_seconds) + " s budget"};
    }
    if (!outcome.pass) ++failures;
    std::printf("[%s] %2d %-32s %8.3f s  %s\n", outcome.pass ? "PASS" : "FAIL", criterion.number,
                criterion.name, seconds, outcome.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
