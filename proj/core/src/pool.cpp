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

#include "divsel/pool.hpp"

#include <algorithm>
#include <future>
#include <iterator>
#include <map>

#include "divsel/error.hpp"

namespace divsel {

namespace {

std::vector<std::vector<std::string>> tokenize_split(const LabeledCorpus& corpus, Split split,
                                                     const PreprocessConfig& preprocess) {
  std::vector<std::vector<std::string>> docs;
  for (std::size_t i : corpus.indices(split)) {
    docs.push_back(divsel::preprocess(corpus.instances()[i].text, preprocess));
  }
  return docs;
}

}  // namespace

Pool train_pool(const LabeledCorpus& corpus, std::span<const std::string> extractors,
                std::span<const std::string> algorithms, const PoolConfig& config) {
  if (extractors.empty()) throw InvalidArgument("extractor list is empty");
  if (algorithms.empty()) throw InvalidArgument("algorithm list is empty");
  for (const auto& a : algorithms) {
    if (!is_supported_algorithm(a)) {
      throw InvalidArgument("unknown learning algorithm '" + a + "' (supported: NB, LR, KNN, NC)");
    }
  }
  std::vector<ExtractorSpec> specs;
  std::vector<std::string> extractor_tokens;
  for (const auto& e : extractors) {
    specs.push_back(parse_extractor(e, config.dense_dimension));
    extractor_tokens.push_back(specs.back().canonical);
  }
  const auto ids = pool_ids(extractor_tokens, algorithms);

  const auto train_docs = tokenize_split(corpus, Split::Train, config.preprocess);
  const auto train_labels = corpus.labels(Split::Train);

  FeatureParams params;
  params.min_document_frequency = config.min_document_frequency;
  params.seed = config.seed;

  std::vector<std::shared_ptr<const FeatureSpace>> spaces;
  std::vector<FeatureMatrix> features;
  for (const auto& spec : specs) {
    auto space = std::make_shared<const FeatureSpace>(
        fit_feature_space(train_docs, spec, params, config.preprocess));
    features.push_back(space->transform_all(train_docs));
    spaces.push_back(std::move(space));
  }

  auto train_one = [&](std::size_t k) {
    const std::size_t e = k / algorithms.size();
    const std::size_t a = k % algorithms.size();
    std::shared_ptr<Learner> learner = make_learner(algorithms[a], config.learners);
    learner->fit(features[e], train_labels, corpus.num_classes());
    return TrainedClassifier(ids[k], spaces[e], std::move(learner));
  };

  Pool pool;
  pool.reserve(ids.size());
  const std::size_t threads = std::max<std::size_t>(1, config.threads);
  if (threads == 1) {
    for (std::size_t k = 0; k < ids.size(); ++k) pool.push_back(train_one(k));
    return pool;
  }
  // Batches of `threads` async tasks; results are collected in id order.
  for (std::size_t start = 0; start < ids.size(); start += threads) {
    std::vector<std::future<TrainedClassifier>> batch;
    for (std::size_t k = start; k < std::min(ids.size(), start + threads); ++k) {
      batch.push_back(std::async(std::launch::async, train_one, k));
    }
    for (auto& f : batch) pool.push_back(f.get());
  }
  return pool;
}

PredictionMatrix predict_matrix(const Pool& pool, const LabeledCorpus& corpus, Split split) {
  if (pool.empty()) throw InvalidArgument("pool is empty");
  const auto rows = corpus.indices(split);
  if (rows.empty()) throw InvalidArgument("split " + std::string(to_string(split)) + " is empty");

  // Group columns by feature space so each document is transformed once per space.
  std::map<const FeatureSpace*, std::vector<std::size_t>> by_space;
  for (std::size_t j = 0; j < pool.size(); ++j) by_space[&pool[j].feature_space()].push_back(j);

  const std::size_t cols = pool.size();
  std::vector<Label> table(rows.size() * cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::string& text = corpus.instances()[rows[r]].text;
    std::vector<std::pair<const PreprocessConfig*, std::vector<std::string>>> token_cache;
    for (const auto& [space, columns] : by_space) {
      const auto& config = space->preprocess_config();
      auto cached = std::find_if(token_cache.begin(), token_cache.end(),
                                 [&](const auto& entry) { return *entry.first == config; });
      if (cached == token_cache.end()) {
        token_cache.emplace_back(&config, preprocess(text, config));
        cached = std::prev(token_cache.end());
      }
      const SparseRow x = space->transform(cached->second);
      for (std::size_t j : columns) table[r * cols + j] = pool[j].predict_features(x);
    }
  }
  std::vector<ClassifierId> ids;
  ids.reserve(cols);
  for (const auto& c : pool) ids.push_back(c.id());
  return PredictionMatrix(std::move(ids), corpus.num_classes(), corpus.labels(split),
                          std::move(table), split, corpus.label_names());
}

}  // namespace divsel
