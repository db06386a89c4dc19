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
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "divsel/text.hpp"

namespace divsel {

// Sparse vector with strictly increasing indices.
struct SparseRow {
  std::vector<std::uint32_t> indices;
  std::vector<double> values;

  double dot(std::span<const double> dense) const noexcept;
  double squared_norm() const noexcept;
};

double dot(const SparseRow& a, const SparseRow& b) noexcept;

struct FeatureMatrix {
  std::size_t dimension = 0;
  std::vector<SparseRow> rows;
};

enum class FeatureKind : std::uint8_t { Count, TfIdf, HashedDense };

// Extractor tokens: "CV" / "COUNT", "TFIDF" / "TF-IDF", "HASHED" / "HASHED-DENSE",
// optionally "HASHED<d>" for a d-dimensional projection. `canonical` is the
// token used in classifier ids (CV, TFIDF, HASHED or HASHED<d>).
struct ExtractorSpec {
  FeatureKind kind = FeatureKind::Count;
  std::size_t dense_dimension = 64;
  std::string canonical;
};

ExtractorSpec parse_extractor(std::string_view token, std::size_t default_dense_dimension = 64);

struct FeatureParams {
  std::size_t min_document_frequency = 2;
  std::uint64_t seed = 0;  // HASHED-DENSE projection seed
};

// Vocabulary and weighting fitted on TRAIN documents only.
class FeatureSpace {
 public:
  FeatureSpace(ExtractorSpec spec, PreprocessConfig preprocess,
               std::map<std::string, std::uint32_t> vocabulary, std::vector<double> idf,
               std::uint64_t seed);

  const ExtractorSpec& spec() const noexcept { return spec_; }
  FeatureKind kind() const noexcept { return spec_.kind; }
  const PreprocessConfig& preprocess_config() const noexcept { return preprocess_; }
  const std::map<std::string, std::uint32_t>& vocabulary() const noexcept { return vocabulary_; }
  // Empty unless kind() == TfIdf. Indexed by vocabulary column.
  const std::vector<double>& idf() const noexcept { return idf_; }
  std::size_t dimension() const noexcept;

  // Tokens outside the vocabulary are ignored.
  SparseRow transform(std::span<const std::string> tokens) const;
  SparseRow transform_text(std::string_view text) const;
  FeatureMatrix transform_all(std::span<const std::vector<std::string>> documents) const;

 private:
  ExtractorSpec spec_;
  PreprocessConfig preprocess_;
  std::map<std::string, std::uint32_t> vocabulary_;
  std::vector<double> idf_;
  std::uint64_t seed_;
  std::vector<std::uint64_t> token_hash_;  // per vocabulary column, HashedDense only
};

// COUNT: raw term counts. TFIDF: counts times idf = ln((1 + D) / (1 + df)) + 1.
// HASHED-DENSE: counts projected through a seeded +-1 random matrix,
// scaled by 1/sqrt(d). Tokens with document frequency below
// `min_document_frequency` are dropped; an empty vocabulary is an error.
FeatureSpace fit_feature_space(std::span<const std::vector<std::string>> train_documents,
                               const ExtractorSpec& spec, const FeatureParams& params,
                               const PreprocessConfig& preprocess = {});

}  // namespace divsel
