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

#include "divsel/selection.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "divsel/error.hpp"

namespace divsel {

std::vector<EnsembleCandidate> hierarchy_select(const Dendrogram& z, const DissimilarityMatrix& m,
                                                const EvalReport& scores, Metric metric) {
  const std::size_t p = z.leaf_count();
  if (m.ids() != z.leaf_ids()) {
    throw InvalidArgument("dendrogram and dissimilarity matrix cover different classifiers");
  }
  if (scores.entries.size() != p) {
    throw InvalidArgument("score report does not cover exactly the pool");
  }
  std::vector<double> value(p);
  for (std::size_t i = 0; i < p; ++i) {
    const auto* entry = scores.find(z.leaf_ids()[i].str());
    if (entry == nullptr) {
      throw InvalidArgument("no validation score for " + z.leaf_ids()[i].str());
    }
    value[i] = entry->metrics.get(metric);
  }

  std::vector<EnsembleCandidate> out;
  out.reserve(p);
  for (std::size_t k = 1; k <= p; ++k) {
    const auto assignment = fcluster(z, k);
    std::vector<std::optional<std::size_t>> best(k);
    for (std::size_t leaf = 0; leaf < p; ++leaf) {
      auto& slot = best[assignment[leaf] - 1];
      if (!slot || value[leaf] > value[*slot] ||
          (value[leaf] == value[*slot] && z.leaf_ids()[leaf] < z.leaf_ids()[*slot])) {
        slot = leaf;
      }
    }
    EnsembleCandidate c;
    c.level = k;
    c.metric = metric;
    std::vector<std::size_t> members;
    for (const auto& b : best) {
      members.push_back(*b);
      c.members.push_back(z.leaf_ids()[*b]);
    }
    c.mean_pairwise_distance = m.mean_pairwise(members);
    out.push_back(std::move(c));
  }
  return out;
}

std::string FinalRule::str() const {
  switch (kind) {
    case Kind::MaxDiversity:
      return "MAX-DIVERSITY";
    case Kind::MaxValidation:
      return "MAX-VALIDATION";
    case Kind::Weighted: {
      char buf[32];
      const auto res = std::to_chars(buf, buf + sizeof buf, alpha);
      return "WEIGHTED(" + std::string(buf, res.ptr) + ")";
    }
  }
  return "UNKNOWN";
}

FinalRule parse_final_rule(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "max-diversity") return {FinalRule::Kind::MaxDiversity, 0.5};
  if (lower == "max-validation") return {FinalRule::Kind::MaxValidation, 0.5};
  if (lower == "weighted") return {FinalRule::Kind::Weighted, 0.5};
  if (lower.rfind("weighted:", 0) == 0) {
    double alpha = 0.0;
    const char* first = lower.data() + 9;
    const char* last = lower.data() + lower.size();
    auto [ptr, ec] = std::from_chars(first, last, alpha);
    if (ec == std::errc{} && ptr == last && alpha >= 0.0 && alpha <= 1.0) {
      return {FinalRule::Kind::Weighted, alpha};
    }
    throw InvalidArgument("weighted rule needs an alpha in [0, 1]");
  }
  throw InvalidArgument("unknown final-choice rule '" + std::string(text) +
                        "' (expected max-diversity, max-validation or weighted:<alpha>)");
}

std::size_t choose_final_index(std::span<const EnsembleCandidate> candidates,
                               const FinalRule& rule) {
  if (candidates.empty()) throw InvalidArgument("no candidates to choose from");
  auto validation = [](const EnsembleCandidate& c) {
    if (!c.validation_score) {
      throw InvalidArgument("candidate at k=" + std::to_string(c.level) +
                            " has no validation score");
    }
    return *c.validation_score;
  };
  auto primary = [&](const EnsembleCandidate& c) {
    switch (rule.kind) {
      case FinalRule::Kind::MaxDiversity:
        return c.mean_pairwise_distance;
      case FinalRule::Kind::MaxValidation:
        return validation(c);
      case FinalRule::Kind::Weighted:
        return rule.alpha * validation(c) + (1.0 - rule.alpha) * c.mean_pairwise_distance;
    }
    return 0.0;
  };
  auto secondary = [&](const EnsembleCandidate& c) {
    return rule.kind == FinalRule::Kind::MaxDiversity ? validation(c) : c.mean_pairwise_distance;
  };
  // Strictly better: larger primary, then larger secondary, then smaller k.
  auto better = [&](const EnsembleCandidate& a, const EnsembleCandidate& b) {
    const double pa = primary(a);
    const double pb = primary(b);
    if (pa != pb) return pa > pb;
    const double sa = secondary(a);
    const double sb = secondary(b);
    if (sa != sb) return sa > sb;
    return a.level < b.level;
  };
  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (better(candidates[i], candidates[best])) best = i;
  }
  return best;
}

EnsembleCandidate choose_final(std::span<const EnsembleCandidate> candidates,
                               const FinalRule& rule) {
  return candidates[choose_final_index(candidates, rule)];
}

std::vector<double> within_cluster_dispersion(const Dendrogram& z, const DissimilarityMatrix& m) {
  const std::size_t p = z.leaf_count();
  if (m.ids() != z.leaf_ids()) {
    throw InvalidArgument("dendrogram and dissimilarity matrix cover different classifiers");
  }
  std::vector<double> w(p);
  for (std::size_t k = 1; k <= p; ++k) {
    const auto assignment = fcluster(z, k);
    double total = 0.0;
    for (std::size_t a = 0; a < p; ++a) {
      for (std::size_t b = a + 1; b < p; ++b) {
        if (assignment[a] == assignment[b]) total += m.at(a, b);
      }
    }
    w[k - 1] = total;
  }
  return w;
}

std::size_t elbow_knee(std::span<const double> w) {
  const std::size_t p = w.size();
  if (p < 3) throw InvalidArgument("elbow selection needs at least 3 levels");
  const double dx = static_cast<double>(p - 1);
  const double dy = w[p - 1] - w[0];
  const double chord = std::hypot(dx, dy);
  std::vector<double> dist(p, 0.0);
  double scale = 0.0;
  for (std::size_t k = 2; k < p; ++k) {
    const double x = static_cast<double>(k - 1);
    const double y = w[k - 1] - w[0];
    dist[k - 1] = std::abs(dy * x - dx * y) / chord;
    scale = std::max(scale, dist[k - 1]);
  }
  const double tol = 1e-12 * std::max(1.0, scale);
  std::size_t best = 2;
  for (std::size_t k = 3; k < p; ++k) {
    if (dist[k - 1] > dist[best - 1] + tol) best = k;
  }
  return best;
}

std::size_t elbow_select(const Dendrogram& z, const DissimilarityMatrix& m) {
  if (z.leaf_count() < 3) throw InvalidArgument("elbow selection needs at least 3 classifiers");
  const auto w = within_cluster_dispersion(z, m);
  return elbow_knee(w);
}

std::vector<ClassifierId> group_members(std::span<const ClassifierId> pool, const GroupMode& mode) {
  if (mode.kind == GroupMode::Kind::All) return {pool.begin(), pool.end()};
  const std::string token = normalize_token(mode.token);
  std::vector<ClassifierId> out;
  for (const auto& id : pool) {
    const auto& field = mode.kind == GroupMode::Kind::Algorithm ? id.algorithm() : id.extractor();
    if (field == token) out.push_back(id);
  }
  if (out.empty()) {
    throw InvalidArgument(std::string(mode.kind == GroupMode::Kind::Algorithm ? "algorithm"
                                                                               : "extractor") +
                          " '" + mode.token + "' does not occur in the pool");
  }
  return out;
}

double random_baseline(std::size_t num_classes) {
  if (num_classes < 2) throw InvalidArgument("random baseline needs at least 2 classes");
  return 1.0 / static_cast<double>(num_classes);
}

}  // namespace divsel
