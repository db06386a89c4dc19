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
#include <cstdint>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "divsel/corpus.hpp"
#include "divsel/diversity.hpp"
#include "divsel/linkage.hpp"
#include "divsel/metrics.hpp"
#include "divsel/pool.hpp"
#include "divsel/prediction_matrix.hpp"
#include "divsel/selection.hpp"
#include "divsel/stacking.hpp"

namespace divsel {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

// Everything after the pool exists: diversity, clustering, level sweep,
// stacking, final choice.
struct SelectionConfig {
  LinkageMethod linkage = LinkageMethod::Complete;
  DistanceConversion diversity = DistanceConversion::DoubleFault;
  std::vector<Metric> metrics{Metric::Accuracy};
  FinalRule rule;
  MetaKind meta = MetaKind::LR;
  StackOptions stack;
  std::uint64_t seed = 42;
};

struct RunConfig {
  std::filesystem::path corpus;
  SplitRatios ratios;
  std::uint64_t seed = 42;
  std::vector<std::string> extractors{"CV", "TFIDF", "HASHED"};
  std::vector<std::string> algorithms{"NB", "LR", "KNN", "NC"};
  PoolConfig pool;
  SelectionConfig selection;
  std::filesystem::path output_dir = "divsel-out";
};

Json to_json(const RunConfig& config);
Json to_json(const SelectionConfig& config);
// Missing keys keep their defaults; unknown values throw InvalidArgument.
RunConfig run_config_from_json(const nlohmann::json& j);

struct SelectionResult {
  EvalReport pool_scores;  // per classifier, on the validation matrix
  DissimilarityMatrix dissimilarity;
  Dendrogram dendrogram;
  // Metric-major, k ascending within each metric; validation_score filled.
  std::vector<EnsembleCandidate> candidates;
  std::size_t final_index = 0;
  StackedEnsemble final_stack;
  // Elbow comparator; empty for pools of fewer than 3 classifiers.
  std::optional<std::size_t> elbow_level;
  std::optional<EnsembleCandidate> elbow;

  const EnsembleCandidate& final_candidate() const { return candidates[final_index]; }
};

EvalReport evaluate_columns(const PredictionMatrix& pm);

// Seed of the meta-learner fitted for candidate (metric, k).
std::uint64_t candidate_seed(std::uint64_t seed, Metric metric, std::size_t level);

SelectionResult run_selection(const PredictionMatrix& validation, const SelectionConfig& config);

Json metrics_json(const Metrics& m);
Json candidate_json(const EnsembleCandidate& c);
Json selection_report(const SelectionResult& result, const SelectionConfig& config);

// Test-split evaluation of a stacked ensemble.
struct StackEvaluation {
  std::vector<ClassifierId> members;
  std::vector<Label> predictions;
  Metrics metrics;
};

StackEvaluation evaluate_stack(const StackedEnsemble& ensemble, const PredictionMatrix& test);

struct RunOutcome {
  Json report;
  std::filesystem::path report_path;
};

// Full train/test pipeline on a corpus file. Writes into config.output_dir:
//   validation_predictions.csv (+ .meta.json)  pool outputs on VALIDATION
//   test_predictions.csv (+ .meta.json)        final members on TEST
//   dissimilarity.csv, dendrogram.json, selection.json, evaluation.json,
//   final_stack.json, run_report.json
// `generated_at` is the only time-dependent field of the report.
// Failures are rethrown as StageError naming the stage.
RunOutcome run_pipeline(const RunConfig& config, const std::string& generated_at);

// Evaluates on TEST every pool member, Groups A (per algorithm), B (per
// extractor), C (all), D (selected), the Elbow ensemble and the random
// baseline. Writes compare_report.json.
RunOutcome compare_pipeline(const RunConfig& config, const std::string& generated_at);

// Comparison rows from already computed matrices; used by compare_pipeline
// and by the `select` command on ingested matrices.
Json comparison_rows(const PredictionMatrix& validation, const PredictionMatrix& test,
                     const SelectionResult& selection, const SelectionConfig& config);

Json ingest_summary(const PredictionMatrix& pm);

// Current UTC time as ISO 8601.
std::string utc_timestamp();

void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace divsel
