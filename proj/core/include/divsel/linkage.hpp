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
#include <string>
#include <string_view>
#include <vector>

#include "divsel/diversity.hpp"
#include "divsel/types.hpp"

namespace divsel {

enum class LinkageMethod : std::uint8_t { Single, Complete, Average, Centroid };

std::string_view to_string(LinkageMethod method) noexcept;
LinkageMethod parse_linkage_method(std::string_view text);

// One agglomeration step. Nodes 0..P-1 are leaves; the node created by step s
// has index P + s. left < right.
struct MergeStep {
  std::size_t left = 0;
  std::size_t right = 0;
  double distance = 0.0;
  std::size_t size = 0;

  friend bool operator==(const MergeStep&, const MergeStep&) = default;
};

class Dendrogram {
 public:
  // Validates the tree structure: P-1 steps, each node used as a child at most
  // once and only after it exists, sizes adding up.
  Dendrogram(std::vector<ClassifierId> leaf_ids, LinkageMethod method,
             std::vector<MergeStep> merges);

  std::size_t leaf_count() const noexcept { return leaf_ids_.size(); }
  const std::vector<ClassifierId>& leaf_ids() const noexcept { return leaf_ids_; }
  LinkageMethod method() const noexcept { return method_; }
  const std::vector<MergeStep>& merges() const noexcept { return merges_; }

  // True when some step merges at a smaller distance than its predecessor
  // (possible under CENTROID).
  bool has_inversions() const noexcept;

  // Leaves below `node`, ascending.
  std::vector<std::size_t> leaves_of(std::size_t node) const;

  friend bool operator==(const Dendrogram&, const Dendrogram&) = default;

 private:
  std::vector<ClassifierId> leaf_ids_;
  LinkageMethod method_;
  std::vector<MergeStep> merges_;
};

// Naive O(P^3) agglomerative clustering with Lance-Williams updates:
//   SINGLE    min(d_ik, d_jk)
//   COMPLETE  max(d_ik, d_jk)
//   AVERAGE   (n_i d_ik + n_j d_jk) / (n_i + n_j)
//   CENTROID  (n_i d_ik + n_j d_jk) / (n_i + n_j) - n_i n_j d_ij / (n_i + n_j)^2
// CENTROID reads the matrix entries as squared distances and reports merge
// heights on that same scale. Among equally close pairs the one with the
// lexicographically smallest (min node, max node) merges first.
Dendrogram linkage(const DissimilarityMatrix& m, LinkageMethod method = LinkageMethod::Complete);

// Flat clustering after exactly P-k merge steps. Returns one cluster number
// per leaf in 1..k, numbered in ascending order of each cluster's smallest
// leaf index.
std::vector<std::size_t> fcluster(const Dendrogram& z, std::size_t k);

// Structured export: leaves, method, and merge steps in a stable field order.
std::string dendrogram_json(const Dendrogram& z);
Dendrogram dendrogram_from_json(std::string_view json);

}  // namespace divsel
