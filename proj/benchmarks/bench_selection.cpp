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

#include <benchmark/benchmark.h>

#include "divsel/diversity.hpp"
#include "divsel/linkage.hpp"
#include "divsel/pipeline.hpp"
#include "divsel/random.hpp"
#include "divsel/selection.hpp"

namespace {

using namespace divsel;

std::vector<ClassifierId> make_ids(std::size_t p) {
  std::vector<ClassifierId> ids;
  for (std::size_t i = 0; i < p; ++i) ids.emplace_back("E" + std::to_string(i), "A");
  return ids;
}

// Pool of P columns over N rows, each column wrong on a random 10-40% of rows.
PredictionMatrix random_pool(std::size_t n, std::size_t p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Label> truth(n);
  for (auto& t : truth) t = static_cast<Label>(rng.uniform_index(2));
  std::vector<double> error_rate(p);
  for (auto& e : error_rate) e = 0.1 + 0.3 * rng.uniform01();
  std::vector<Label> pred(n * p);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      const bool wrong = rng.uniform01() < error_rate[j];
      pred[i * p + j] = wrong ? 1 - truth[i] : truth[i];
    }
  }
  return PredictionMatrix(make_ids(p), 2, truth, pred, Split::Validation);
}

DissimilarityMatrix random_matrix(std::size_t p) {
  Rng rng(p);
  std::vector<double> v(p * p, 0.0);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i + 1; j < p; ++j) v[i * p + j] = v[j * p + i] = rng.uniform01();
  }
  return DissimilarityMatrix(make_ids(p), std::move(v));
}

void BM_DissimilarityMatrix(benchmark::State& state) {
  const auto pm = random_pool(static_cast<std::size_t>(state.range(0)),
                              static_cast<std::size_t>(state.range(1)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(dissimilarity_matrix(pm));
  state.SetItemsProcessed(state.iterations() * state.range(1) * (state.range(1) - 1) / 2);
}
BENCHMARK(BM_DissimilarityMatrix)->Args({1000, 12})->Args({1000, 40})->Args({10000, 40});

void BM_Linkage(benchmark::State& state) {
  const auto m = random_matrix(static_cast<std::size_t>(state.range(0)));
  const auto method = static_cast<LinkageMethod>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(linkage(m, method));
}
BENCHMARK(BM_Linkage)
    ->ArgsProduct({{10, 40, 100, 200}, {0, 1, 2, 3}})
    ->ArgNames({"P", "method"});

void BM_HierarchySelect(benchmark::State& state) {
  const auto pm = random_pool(2000, static_cast<std::size_t>(state.range(0)), 2);
  const auto m = dissimilarity_matrix(pm);
  const auto z = linkage(m);
  const auto scores = evaluate_columns(pm);
  for (auto _ : state) benchmark::DoNotOptimize(hierarchy_select(z, m, scores, Metric::Accuracy));
}
BENCHMARK(BM_HierarchySelect)->Arg(12)->Arg(40)->Arg(100);

void BM_RunSelection(benchmark::State& state) {
  const auto pm = random_pool(1000, static_cast<std::size_t>(state.range(0)), 3);
  const SelectionConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(run_selection(pm, config));
}
BENCHMARK(BM_RunSelection)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
