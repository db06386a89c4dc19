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

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "divsel/types.hpp"

namespace divsel {

struct Instance {
  std::string text;
  Label label = 0;
};

// Labeled texts before split assignment. `label_names[i]` is the original
// string label mapped to index i (first-appearance order when read from file).
struct RawCorpus {
  std::vector<Instance> instances;
  std::size_t num_classes = 0;
  std::vector<std::string> label_names;
};

// Labeled texts with a TRAIN / VALIDATION / TEST tag per instance.
//
// Invariants (checked on construction): every label < num_classes, every class
// occurs in TRAIN, VALIDATION and TEST are non-empty.
class LabeledCorpus {
 public:
  LabeledCorpus(std::vector<Instance> instances, std::size_t num_classes,
                std::vector<Split> splits, std::vector<std::string> label_names = {});

  std::size_t size() const noexcept { return instances_.size(); }
  std::size_t num_classes() const noexcept { return num_classes_; }
  const std::vector<Instance>& instances() const noexcept { return instances_; }
  const std::vector<Split>& splits() const noexcept { return splits_; }
  const std::vector<std::string>& label_names() const noexcept { return label_names_; }

  // Corpus-order indices of the instances tagged `split`.
  std::vector<std::size_t> indices(Split split) const;
  std::vector<Label> labels(Split split) const;
  std::size_t count(Split split) const;

  // Copy with every instance of `split` removed. Only valid for TEST, since
  // TRAIN and VALIDATION may not be empty.
  LabeledCorpus without(Split split) const;

 private:
  std::vector<Instance> instances_;
  std::size_t num_classes_;
  std::vector<Split> splits_;
  std::vector<std::string> label_names_;
};

struct SplitRatios {
  double train = 0.6;
  double validation = 0.2;
  double test = 0.2;
};

// Stratified assignment: each class is shuffled with a seeded generator and
// divided by largest-remainder rounding of the ratios, with every split
// receiving at least one instance of every class. Pure function of
// (corpus order, ratios, seed).
LabeledCorpus split_corpus(const RawCorpus& corpus, const SplitRatios& ratios, std::uint64_t seed);

// Per-class allocation used by split_corpus: {train, validation, test} counts
// summing to `n`. Requires n >= 3.
std::array<std::size_t, 3> stratum_counts(std::size_t n, const SplitRatios& ratios);

// Reads a `text,label` CSV file. Labels are arbitrary strings mapped to
// indices by first appearance.
RawCorpus read_corpus_csv(std::istream& in);
RawCorpus read_corpus_csv(const std::filesystem::path& path);

void write_corpus_csv(std::ostream& out, const RawCorpus& corpus);

}  // namespace divsel
