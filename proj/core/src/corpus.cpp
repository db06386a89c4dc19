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

#include "divsel/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>

#include "divsel/csv.hpp"
#include "divsel/error.hpp"
#include "divsel/random.hpp"

namespace divsel {

LabeledCorpus::LabeledCorpus(std::vector<Instance> instances, std::size_t num_classes,
                             std::vector<Split> splits, std::vector<std::string> label_names)
    : instances_(std::move(instances)),
      num_classes_(num_classes),
      splits_(std::move(splits)),
      label_names_(std::move(label_names)) {
  if (num_classes_ < 2) throw InvalidArgument("a corpus needs at least 2 classes");
  if (splits_.size() != instances_.size()) {
    throw InvalidArgument("split tag count does not match instance count");
  }
  if (!label_names_.empty() && label_names_.size() != num_classes_) {
    throw InvalidArgument("label name count does not match num_classes");
  }
  std::vector<bool> in_train(num_classes_, false);
  std::size_t validation = 0;
  std::size_t test = 0;
  for (std::size_t i = 0; i < instances_.size(); ++i) {
    const Label y = instances_[i].label;
    if (y >= num_classes_) {
      throw InvalidArgument("instance " + std::to_string(i) + " has label " + std::to_string(y) +
                            " >= num_classes " + std::to_string(num_classes_));
    }
    switch (splits_[i]) {
      case Split::Train:
        in_train[y] = true;
        break;
      case Split::Validation:
        ++validation;
        break;
      case Split::Test:
        ++test;
        break;
    }
  }
  for (std::size_t c = 0; c < num_classes_; ++c) {
    if (!in_train[c]) {
      throw InvalidArgument("class " + std::to_string(c) + " has no TRAIN instance");
    }
  }
  if (validation == 0) throw InvalidArgument("VALIDATION split is empty");
  if (test == 0) throw InvalidArgument("TEST split is empty");
}

std::vector<std::size_t> LabeledCorpus::indices(Split split) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < splits_.size(); ++i) {
    if (splits_[i] == split) out.push_back(i);
  }
  return out;
}

std::vector<Label> LabeledCorpus::labels(Split split) const {
  std::vector<Label> out;
  for (std::size_t i = 0; i < splits_.size(); ++i) {
    if (splits_[i] == split) out.push_back(instances_[i].label);
  }
  return out;
}

std::size_t LabeledCorpus::count(Split split) const {
  return static_cast<std::size_t>(std::count(splits_.begin(), splits_.end(), split));
}

LabeledCorpus LabeledCorpus::without(Split split) const {
  if (split != Split::Test) throw InvalidArgument("only the TEST split can be removed");
  std::vector<Instance> kept;
  std::vector<Split> tags;
  for (std::size_t i = 0; i < instances_.size(); ++i) {
    if (splits_[i] == split) continue;
    kept.push_back(instances_[i]);
    tags.push_back(splits_[i]);
  }
  // Bypasses the constructor: the result has no TEST instances.
  LabeledCorpus out = *this;
  out.instances_ = std::move(kept);
  out.splits_ = std::move(tags);
  return out;
}

std::array<std::size_t, 3> stratum_counts(std::size_t n, const SplitRatios& ratios) {
  const std::array<double, 3> r{ratios.train, ratios.validation, ratios.test};
  std::array<std::size_t, 3> counts{};
  std::array<double, 3> remainder{};
  std::size_t assigned = 0;
  for (int s = 0; s < 3; ++s) {
    const double exact = r[s] * static_cast<double>(n);
    counts[s] = static_cast<std::size_t>(std::floor(exact));
    remainder[s] = exact - static_cast<double>(counts[s]);
    assigned += counts[s];
  }
  // Largest remainder; ties go to the earlier split.
  while (assigned < n) {
    int best = 0;
    for (int s = 1; s < 3; ++s) {
      if (remainder[s] > remainder[best]) best = s;
    }
    ++counts[best];
    remainder[best] = -1.0;
    ++assigned;
  }
  // Every split gets at least one instance; take from the largest split.
  for (int s = 0; s < 3; ++s) {
    if (counts[s] > 0) continue;
    int donor = 0;
    for (int d = 1; d < 3; ++d) {
      if (counts[d] > counts[donor]) donor = d;
    }
    --counts[donor];
    counts[s] = 1;
  }
  return counts;
}

LabeledCorpus split_corpus(const RawCorpus& corpus, const SplitRatios& ratios, std::uint64_t seed) {
  const double sum = ratios.train + ratios.validation + ratios.test;
  if (std::abs(sum - 1.0) > 1e-9) throw InvalidArgument("split ratios must sum to 1");
  if (!(ratios.train > 0.0 && ratios.validation > 0.0 && ratios.test > 0.0)) {
    throw InvalidArgument("every split ratio must be > 0");
  }
  const std::size_t num_classes = corpus.num_classes;
  if (num_classes < 2) throw InvalidArgument("a corpus needs at least 2 classes");

  std::vector<std::vector<std::size_t>> by_class(num_classes);
  for (std::size_t i = 0; i < corpus.instances.size(); ++i) {
    const Label y = corpus.instances[i].label;
    if (y >= num_classes) {
      throw InvalidArgument("instance " + std::to_string(i) + " has out-of-range label");
    }
    by_class[y].push_back(i);
  }
  for (std::size_t c = 0; c < num_classes; ++c) {
    if (by_class[c].size() < 3) {
      const std::string name =
          c < corpus.label_names.size() ? corpus.label_names[c] : std::to_string(c);
      throw InvalidArgument("class '" + name + "' has " + std::to_string(by_class[c].size()) +
                            " instances; at least 3 are needed to stratify");
    }
  }

  std::vector<Split> tags(corpus.instances.size(), Split::Train);
  for (std::size_t c = 0; c < num_classes; ++c) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(c)));
    auto members = by_class[c];
    rng.shuffle(members);
    const auto counts = stratum_counts(members.size(), ratios);
    for (std::size_t k = 0; k < members.size(); ++k) {
      tags[members[k]] = k < counts[0]               ? Split::Train
                         : k < counts[0] + counts[1] ? Split::Validation
                                                     : Split::Test;
    }
  }
  return LabeledCorpus(corpus.instances, num_classes, std::move(tags), corpus.label_names);
}

RawCorpus read_corpus_csv(std::istream& in) {
  const auto records = csv::read(in);
  if (records.empty()) throw ParseError(0, "corpus file is empty");
  const auto& header = records.front();
  if (header.fields.size() != 2 || header.fields[0] != "text" || header.fields[1] != "label") {
    throw ParseError(header.line, "corpus header must be 'text,label'");
  }
  RawCorpus corpus;
  std::map<std::string, Label> index;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != 2) {
      throw ParseError(rec.line, "expected 2 fields, found " + std::to_string(rec.fields.size()));
    }
    const std::string& name = rec.fields[1];
    if (name.empty()) throw ParseError(rec.line, "empty label");
    auto [it, inserted] = index.try_emplace(name, static_cast<Label>(corpus.label_names.size()));
    if (inserted) corpus.label_names.push_back(name);
    corpus.instances.push_back({rec.fields[0], it->second});
  }
  corpus.num_classes = corpus.label_names.size();
  return corpus;
}

RawCorpus read_corpus_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open corpus file '" + path.string() + "'");
  return read_corpus_csv(in);
}

void write_corpus_csv(std::ostream& out, const RawCorpus& corpus) {
  csv::write_row(out, {"text", "label"});
  for (const auto& inst : corpus.instances) {
    csv::write_row(out, {inst.text, corpus.label_names.empty() ? std::to_string(inst.label)
                                                               : corpus.label_names[inst.label]});
  }
}

}  // namespace divsel
