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

#include "divsel/features.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>

#include "divsel/error.hpp"
#include "divsel/random.hpp"

namespace divsel {

double SparseRow::dot(std::span<const double> dense) const noexcept {
  double s = 0.0;
  for (std::size_t k = 0; k < indices.size(); ++k) s += values[k] * dense[indices[k]];
  return s;
}

double SparseRow::squared_norm() const noexcept {
  double s = 0.0;
  for (double v : values) s += v * v;
  return s;
}

double dot(const SparseRow& a, const SparseRow& b) noexcept {
  double s = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.indices.size() && j < b.indices.size()) {
    if (a.indices[i] < b.indices[j]) {
      ++i;
    } else if (a.indices[i] > b.indices[j]) {
      ++j;
    } else {
      s += a.values[i++] * b.values[j++];
    }
  }
  return s;
}

ExtractorSpec parse_extractor(std::string_view token, std::size_t default_dense_dimension) {
  std::string upper(token);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (upper == "CV" || upper == "COUNT") return {FeatureKind::Count, 0, "CV"};
  if (upper == "TFIDF" || upper == "TF-IDF") return {FeatureKind::TfIdf, 0, "TFIDF"};
  if (upper == "HASHED" || upper == "HASHED-DENSE") {
    if (default_dense_dimension == 0) throw InvalidArgument("dense dimension must be positive");
    return {FeatureKind::HashedDense, default_dense_dimension, "HASHED"};
  }
  if (upper.rfind("HASHED", 0) == 0) {
    std::size_t d = 0;
    const char* first = upper.data() + 6;
    const char* last = upper.data() + upper.size();
    auto [ptr, ec] = std::from_chars(first, last, d);
    if (ec == std::errc{} && ptr == last && d > 0) {
      return {FeatureKind::HashedDense, d, upper};
    }
  }
  throw InvalidArgument("unknown feature extractor '" + std::string(token) +
                        "' (expected CV, TFIDF, HASHED or HASHED<d>)");
}

FeatureSpace::FeatureSpace(ExtractorSpec spec, PreprocessConfig preprocess,
                           std::map<std::string, std::uint32_t> vocabulary,
                           std::vector<double> idf, std::uint64_t seed)
    : spec_(std::move(spec)),
      preprocess_(std::move(preprocess)),
      vocabulary_(std::move(vocabulary)),
      idf_(std::move(idf)),
      seed_(seed) {
  if (vocabulary_.empty()) throw InvalidArgument("feature space has an empty vocabulary");
  if (spec_.kind == FeatureKind::TfIdf && idf_.size() != vocabulary_.size()) {
    throw InvalidArgument("idf vector does not match vocabulary");
  }
  if (spec_.kind == FeatureKind::HashedDense) {
    if (spec_.dense_dimension == 0) throw InvalidArgument("dense dimension must be positive");
    token_hash_.resize(vocabulary_.size());
    for (const auto& [token, col] : vocabulary_) token_hash_[col] = derive_seed(seed_, token);
  }
}

std::size_t FeatureSpace::dimension() const noexcept {
  return spec_.kind == FeatureKind::HashedDense ? spec_.dense_dimension : vocabulary_.size();
}

SparseRow FeatureSpace::transform(std::span<const std::string> tokens) const {
  std::map<std::uint32_t, double> counts;
  for (const auto& t : tokens) {
    if (auto it = vocabulary_.find(t); it != vocabulary_.end()) counts[it->second] += 1.0;
  }
  SparseRow row;
  if (spec_.kind != FeatureKind::HashedDense) {
    row.indices.reserve(counts.size());
    row.values.reserve(counts.size());
    for (const auto& [col, n] : counts) {
      row.indices.push_back(col);
      row.values.push_back(spec_.kind == FeatureKind::TfIdf ? n * idf_[col] : n);
    }
    return row;
  }
  const std::size_t d = spec_.dense_dimension;
  std::vector<double> dense(d, 0.0);
  for (const auto& [col, n] : counts) {
    const std::uint64_t h = token_hash_[col];
    for (std::size_t j = 0; j < d; ++j) {
      const bool positive = (derive_seed(h, static_cast<std::uint64_t>(j)) & 1U) != 0;
      dense[j] += positive ? n : -n;
    }
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  row.indices.resize(d);
  row.values.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    row.indices[j] = static_cast<std::uint32_t>(j);
    row.values[j] = dense[j] * scale;
  }
  return row;
}

SparseRow FeatureSpace::transform_text(std::string_view text) const {
  const auto tokens = preprocess(text, preprocess_);
  return transform(tokens);
}

FeatureMatrix FeatureSpace::transform_all(std::span<const std::vector<std::string>> documents) const {
  FeatureMatrix m;
  m.dimension = dimension();
  m.rows.reserve(documents.size());
  for (const auto& doc : documents) m.rows.push_back(transform(doc));
  return m;
}

FeatureSpace fit_feature_space(std::span<const std::vector<std::string>> train_documents,
                               const ExtractorSpec& spec, const FeatureParams& params,
                               const PreprocessConfig& preprocess) {
  std::map<std::string, std::size_t> df;
  std::size_t nonempty = 0;
  for (const auto& doc : train_documents) {
    if (!doc.empty()) ++nonempty;
    const std::set<std::string> unique(doc.begin(), doc.end());
    for (const auto& t : unique) ++df[t];
  }
  if (nonempty == 0) throw InvalidArgument("no non-empty training document");

  std::map<std::string, std::uint32_t> vocabulary;
  std::vector<double> idf;
  const double num_docs = static_cast<double>(train_documents.size());
  for (const auto& [token, freq] : df) {
    if (freq < params.min_document_frequency) continue;
    const auto col = static_cast<std::uint32_t>(vocabulary.size());
    vocabulary.emplace(token, col);
    if (spec.kind == FeatureKind::TfIdf) {
      idf.push_back(std::log((1.0 + num_docs) / (1.0 + static_cast<double>(freq))) + 1.0);
    }
  }
  if (vocabulary.empty()) {
    throw InvalidArgument("vocabulary is empty after filtering tokens with document frequency < " +
                          std::to_string(params.min_document_frequency));
  }
  return FeatureSpace(spec, preprocess, std::move(vocabulary), std::move(idf),
                      derive_seed(params.seed, spec.canonical));
}

}  // namespace divsel
