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

#include "divsel/linkage.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <nlohmann/json.hpp>
#include <numeric>
#include <utility>

#include "divsel/error.hpp"

namespace divsel {

std::string_view to_string(LinkageMethod method) noexcept {
  switch (method) {
    case LinkageMethod::Single:
      return "SINGLE";
    case LinkageMethod::Complete:
      return "COMPLETE";
    case LinkageMethod::Average:
      return "AVERAGE";
    case LinkageMethod::Centroid:
      return "CENTROID";
  }
  return "UNKNOWN";
}

LinkageMethod parse_linkage_method(std::string_view text) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (auto m : {LinkageMethod::Single, LinkageMethod::Complete, LinkageMethod::Average,
                 LinkageMethod::Centroid}) {
    if (upper == to_string(m)) return m;
  }
  throw InvalidArgument("unknown linkage method '" + std::string(text) +
                        "' (expected single, complete, average or centroid)");
}

Dendrogram::Dendrogram(std::vector<ClassifierId> leaf_ids, LinkageMethod method,
                       std::vector<MergeStep> merges)
    : leaf_ids_(std::move(leaf_ids)), method_(method), merges_(std::move(merges)) {
  const std::size_t p = leaf_ids_.size();
  if (p < 2) throw InvalidArgument("a dendrogram needs at least 2 leaves");
  if (merges_.size() != p - 1) throw InvalidArgument("a dendrogram over P leaves has P-1 merges");
  std::vector<std::size_t> size(2 * p - 1, 0);
  std::vector<bool> used(2 * p - 1, false);
  std::fill(size.begin(), size.begin() + static_cast<std::ptrdiff_t>(p), 1);
  for (std::size_t s = 0; s < merges_.size(); ++s) {
    const auto& m = merges_[s];
    const std::size_t created = p + s;
    if (m.left >= m.right || m.right >= created) {
      throw InvalidArgument("merge step " + std::to_string(s) + " has invalid children");
    }
    if (used[m.left] || used[m.right]) {
      throw InvalidArgument("merge step " + std::to_string(s) + " reuses a node");
    }
    if (m.size != size[m.left] + size[m.right]) {
      throw InvalidArgument("merge step " + std::to_string(s) + " has an inconsistent size");
    }
    used[m.left] = used[m.right] = true;
    size[created] = m.size;
  }
}

bool Dendrogram::has_inversions() const noexcept {
  for (std::size_t s = 1; s < merges_.size(); ++s) {
    if (merges_[s].distance < merges_[s - 1].distance) return true;
  }
  return false;
}

std::vector<std::size_t> Dendrogram::leaves_of(std::size_t node) const {
  const std::size_t p = leaf_ids_.size();
  std::vector<std::size_t> out;
  std::vector<std::size_t> stack{node};
  while (!stack.empty()) {
    const std::size_t n = stack.back();
    stack.pop_back();
    if (n < p) {
      out.push_back(n);
    } else {
      stack.push_back(merges_[n - p].left);
      stack.push_back(merges_[n - p].right);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Dendrogram linkage(const DissimilarityMatrix& m, LinkageMethod method) {
  const std::size_t p = m.size();
  if (p < 2) throw InvalidArgument("linkage needs at least 2 classifiers");

  // Working matrix over slots; a merged cluster reuses the slot of its first child.
  std::vector<double> d(m.values());
  std::vector<std::size_t> node(p);
  std::iota(node.begin(), node.end(), 0);
  std::vector<std::size_t> size(p, 1);
  std::vector<bool> active(p, true);

  std::vector<MergeStep> merges;
  merges.reserve(p - 1);
  for (std::size_t step = 0; step + 1 < p; ++step) {
    double best = std::numeric_limits<double>::infinity();
    std::pair<std::size_t, std::size_t> best_key{p * 2, p * 2};
    std::size_t best_a = 0;
    std::size_t best_b = 0;
    for (std::size_t a = 0; a < p; ++a) {
      if (!active[a]) continue;
      for (std::size_t b = a + 1; b < p; ++b) {
        if (!active[b]) continue;
        const double dist = d[a * p + b];
        const std::pair key{std::min(node[a], node[b]), std::max(node[a], node[b])};
        if (dist < best || (dist == best && key < best_key)) {
          best = dist;
          best_key = key;
          best_a = a;
          best_b = b;
        }
      }
    }

    const double ni = static_cast<double>(size[best_a]);
    const double nj = static_cast<double>(size[best_b]);
    for (std::size_t k = 0; k < p; ++k) {
      if (!active[k] || k == best_a || k == best_b) continue;
      const double dik = d[best_a * p + k];
      const double djk = d[best_b * p + k];
      double updated = 0.0;
      switch (method) {
        case LinkageMethod::Single:
          updated = std::min(dik, djk);
          break;
        case LinkageMethod::Complete:
          updated = std::max(dik, djk);
          break;
        case LinkageMethod::Average:
          updated = (ni * dik + nj * djk) / (ni + nj);
          break;
        case LinkageMethod::Centroid:
          updated = (ni * dik + nj * djk) / (ni + nj) - ni * nj * best / ((ni + nj) * (ni + nj));
          break;
      }
      d[best_a * p + k] = updated;
      d[k * p + best_a] = updated;
    }

    merges.push_back({best_key.first, best_key.second, best, size[best_a] + size[best_b]});
    node[best_a] = p + step;
    size[best_a] += size[best_b];
    active[best_b] = false;
  }
  return Dendrogram(m.ids(), method, std::move(merges));
}

std::vector<std::size_t> fcluster(const Dendrogram& z, std::size_t k) {
  const std::size_t p = z.leaf_count();
  if (k < 1 || k > p) {
    throw InvalidArgument("cluster count " + std::to_string(k) + " outside 1.." +
                          std::to_string(p));
  }
  std::vector<std::size_t> parent(2 * p - 1);
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t s = 0; s < p - k; ++s) {
    parent[z.merges()[s].left] = p + s;
    parent[z.merges()[s].right] = p + s;
  }
  auto root = [&](std::size_t n) {
    while (parent[n] != n) n = parent[n];
    return n;
  };
  std::vector<std::size_t> number(2 * p - 1, 0);
  std::vector<std::size_t> out(p);
  std::size_t next = 0;
  for (std::size_t leaf = 0; leaf < p; ++leaf) {
    const std::size_t r = root(leaf);
    if (number[r] == 0) number[r] = ++next;
    out[leaf] = number[r];
  }
  return out;
}

std::string dendrogram_json(const Dendrogram& z) {
  nlohmann::ordered_json j;
  j["format"] = "divsel.dendrogram";
  j["version"] = 1;
  j["method"] = std::string(to_string(z.method()));
  j["leaves"] = render_ids(z.leaf_ids());
  j["merges"] = nlohmann::ordered_json::array();
  for (const auto& m : z.merges()) {
    nlohmann::ordered_json step;
    step["left"] = m.left;
    step["right"] = m.right;
    step["distance"] = m.distance;
    step["size"] = m.size;
    j["merges"].push_back(std::move(step));
  }
  j["inversions"] = z.has_inversions();
  return j.dump(2) + "\n";
}

Dendrogram dendrogram_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.at("format").get<std::string>() != "divsel.dendrogram") {
      throw ParseError(0, "not a dendrogram document");
    }
    std::vector<ClassifierId> leaves;
    for (const auto& s : j.at("leaves")) leaves.push_back(ClassifierId::parse(s.get<std::string>()));
    std::vector<MergeStep> merges;
    for (const auto& s : j.at("merges")) {
      merges.push_back({s.at("left").get<std::size_t>(), s.at("right").get<std::size_t>(),
                        s.at("distance").get<double>(), s.at("size").get<std::size_t>()});
    }
    return Dendrogram(std::move(leaves), parse_linkage_method(j.at("method").get<std::string>()),
                      std::move(merges));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("malformed dendrogram: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(0, std::string("invalid dendrogram: ") + e.what());
  }
}

}  // namespace divsel
