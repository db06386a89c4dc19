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

#include "divsel/stacking.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <nlohmann/json.hpp>

#include "divsel/error.hpp"

namespace divsel {

std::string_view to_string(MetaKind kind) noexcept {
  switch (kind) {
    case MetaKind::LR:
      return "LR";
    case MetaKind::NB:
      return "NB";
    case MetaKind::Vote:
      return "VOTE";
  }
  return "UNKNOWN";
}

MetaKind parse_meta_kind(std::string_view text) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (upper == "LR") return MetaKind::LR;
  if (upper == "NB") return MetaKind::NB;
  if (upper == "VOTE") return MetaKind::Vote;
  throw InvalidArgument("unsupported meta-classifier '" + std::string(text) +
                        "' (supported: LR, NB, VOTE)");
}

namespace {

SparseRow one_hot_row(std::span<const Label> labels, std::size_t num_classes) {
  SparseRow row;
  row.indices.reserve(labels.size());
  row.values.assign(labels.size(), 1.0);
  for (std::size_t m = 0; m < labels.size(); ++m) {
    row.indices.push_back(static_cast<std::uint32_t>(m * num_classes + labels[m]));
  }
  return row;
}

std::vector<std::size_t> member_columns(const PredictionMatrix& pm,
                                        std::span<const ClassifierId> members) {
  std::vector<std::size_t> cols;
  cols.reserve(members.size());
  for (const auto& id : members) cols.push_back(pm.require(id));
  return cols;
}

Label argmax(std::span<const double> v) {
  return static_cast<Label>(std::max_element(v.begin(), v.end()) - v.begin());
}

}  // namespace

FeatureMatrix meta_features(const PredictionMatrix& pm, std::span<const ClassifierId> members,
                            std::size_t num_classes) {
  const auto cols = member_columns(pm, members);
  FeatureMatrix x;
  x.dimension = members.size() * num_classes;
  x.rows.reserve(pm.rows());
  std::vector<Label> labels(cols.size());
  for (std::size_t i = 0; i < pm.rows(); ++i) {
    for (std::size_t m = 0; m < cols.size(); ++m) {
      labels[m] = pm.at(i, cols[m]);
      if (labels[m] >= num_classes) throw InvalidArgument("prediction exceeds num_classes");
    }
    x.rows.push_back(one_hot_row(labels, num_classes));
  }
  return x;
}

std::vector<double> to_dense(const FeatureMatrix& x) {
  std::vector<double> out(x.rows.size() * x.dimension, 0.0);
  for (std::size_t i = 0; i < x.rows.size(); ++i) {
    const auto& row = x.rows[i];
    for (std::size_t k = 0; k < row.indices.size(); ++k) {
      out[i * x.dimension + row.indices[k]] = row.values[k];
    }
  }
  return out;
}

SparseRow StackedEnsemble::encode(std::span<const Label> member_labels) const {
  if (member_labels.size() != members_.size()) {
    throw InvalidArgument("expected one label per ensemble member");
  }
  for (Label y : member_labels) {
    if (y >= num_classes_) throw InvalidArgument("member label out of range");
  }
  return one_hot_row(member_labels, num_classes_);
}

std::vector<double> StackedEnsemble::probabilities(std::span<const Label> member_labels) const {
  const SparseRow x = encode(member_labels);
  switch (kind_) {
    case MetaKind::LR:
      return lr_.probabilities(x);
    case MetaKind::NB: {
      const std::size_t c_count = num_classes_;
      std::vector<double> s(nb_log_prior_);
      for (std::size_t c = 0; c < c_count; ++c) {
        for (std::size_t m = 0; m < member_labels.size(); ++m) {
          s[c] += nb_log_likelihood_[(m * c_count + c) * c_count + member_labels[m]];
        }
      }
      const double top = *std::max_element(s.begin(), s.end());
      double total = 0.0;
      for (auto& v : s) {
        v = std::exp(v - top);
        total += v;
      }
      for (auto& v : s) v /= total;
      return s;
    }
    case MetaKind::Vote: {
      std::vector<double> votes(num_classes_, 0.0);
      for (Label y : member_labels) votes[y] += 1.0;
      for (auto& v : votes) v /= static_cast<double>(member_labels.size());
      return votes;
    }
  }
  return {};
}

Label StackedEnsemble::predict_row(std::span<const Label> member_labels) const {
  if (kind_ == MetaKind::LR) return lr_.predict(encode(member_labels));
  if (kind_ == MetaKind::Vote) {
    (void)encode(member_labels);
    std::vector<double> votes(num_classes_, 0.0);
    for (Label y : member_labels) votes[y] += 1.0;
    return argmax(votes);
  }
  const auto p = probabilities(member_labels);
  return argmax(p);
}

StackedEnsemble fit_stack(const PredictionMatrix& validation, std::span<const ClassifierId> members,
                          MetaKind kind, std::uint64_t seed, const StackOptions& options) {
  if (members.empty()) throw InvalidArgument("a stacked ensemble needs at least one member");
  if (!all_distinct(members)) throw InvalidArgument("duplicate ensemble member");
  const std::size_t c_count = validation.num_classes();
  if (validation.rows() < c_count) {
    throw InvalidArgument("meta-training needs at least num_classes validation rows");
  }
  StackedEnsemble e;
  e.members_.assign(members.begin(), members.end());
  e.kind_ = kind;
  e.num_classes_ = c_count;
  e.seed_ = seed;

  switch (kind) {
    case MetaKind::Vote:
      (void)member_columns(validation, members);
      break;
    case MetaKind::LR: {
      const auto x = meta_features(validation, members, c_count);
      auto fit = fit_softmax(x, validation.truth(), c_count, options.lr);
      e.lr_ = std::move(fit.model);
      e.objective_ = std::move(fit.objective);
      e.diverged_ = fit.diverged;
      break;
    }
    case MetaKind::NB: {
      const auto cols = member_columns(validation, members);
      const double a = options.nb_alpha;
      std::vector<double> class_count(c_count, 0.0);
      std::vector<double> counts(members.size() * c_count * c_count, 0.0);
      for (std::size_t i = 0; i < validation.rows(); ++i) {
        const Label y = validation.truth()[i];
        class_count[y] += 1.0;
        for (std::size_t m = 0; m < cols.size(); ++m) {
          counts[(m * c_count + y) * c_count + validation.at(i, cols[m])] += 1.0;
        }
      }
      const double n = static_cast<double>(validation.rows());
      const double k = static_cast<double>(c_count);
      e.nb_log_prior_.resize(c_count);
      for (std::size_t c = 0; c < c_count; ++c) {
        e.nb_log_prior_[c] = std::log((class_count[c] + a) / (n + a * k));
      }
      e.nb_log_likelihood_.resize(counts.size());
      for (std::size_t m = 0; m < members.size(); ++m) {
        for (std::size_t c = 0; c < c_count; ++c) {
          for (std::size_t v = 0; v < c_count; ++v) {
            const std::size_t idx = (m * c_count + c) * c_count + v;
            e.nb_log_likelihood_[idx] = std::log((counts[idx] + a) / (class_count[c] + a * k));
          }
        }
      }
      break;
    }
  }
  return e;
}

std::vector<Label> predict_stack(const StackedEnsemble& ensemble, const PredictionMatrix& pm) {
  if (pm.num_classes() != ensemble.num_classes()) {
    throw InvalidArgument("prediction matrix class count differs from the ensemble's");
  }
  const auto cols = member_columns(pm, ensemble.members());
  std::vector<Label> out(pm.rows());
  std::vector<Label> labels(cols.size());
  for (std::size_t i = 0; i < pm.rows(); ++i) {
    for (std::size_t m = 0; m < cols.size(); ++m) labels[m] = pm.at(i, cols[m]);
    out[i] = ensemble.predict_row(labels);
  }
  return out;
}

bool operator==(const StackedEnsemble& a, const StackedEnsemble& b) {
  return a.members_ == b.members_ && a.kind_ == b.kind_ && a.num_classes_ == b.num_classes_ &&
         a.seed_ == b.seed_ && a.lr_.num_classes == b.lr_.num_classes &&
         a.lr_.dimension == b.lr_.dimension && a.lr_.weights == b.lr_.weights &&
         a.nb_log_prior_ == b.nb_log_prior_ && a.nb_log_likelihood_ == b.nb_log_likelihood_;
}

std::string StackedEnsemble::to_json() const {
  nlohmann::ordered_json j;
  j["format"] = "divsel.stack";
  j["version"] = 1;
  j["meta_kind"] = std::string(to_string(kind_));
  j["num_classes"] = num_classes_;
  j["seed"] = seed_;
  j["members"] = render_ids(members_);
  nlohmann::ordered_json layout = nlohmann::ordered_json::array();
  for (std::size_t m = 0; m < members_.size(); ++m) {
    nlohmann::ordered_json block;
    block["member"] = members_[m].str();
    block["offset"] = m * num_classes_;
    block["width"] = num_classes_;
    layout.push_back(std::move(block));
  }
  j["layout"] = std::move(layout);
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  if (kind_ == MetaKind::LR) {
    params["dimension"] = lr_.dimension;
    params["weights"] = lr_.weights;
  } else if (kind_ == MetaKind::NB) {
    params["log_prior"] = nb_log_prior_;
    params["log_likelihood"] = nb_log_likelihood_;
  }
  j["parameters"] = std::move(params);
  return j.dump(2) + "\n";
}

StackedEnsemble StackedEnsemble::from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.at("format").get<std::string>() != "divsel.stack") {
      throw ParseError(0, "not a stacked-ensemble document");
    }
    StackedEnsemble e;
    e.kind_ = parse_meta_kind(j.at("meta_kind").get<std::string>());
    e.num_classes_ = j.at("num_classes").get<std::size_t>();
    e.seed_ = j.at("seed").get<std::uint64_t>();
    for (const auto& s : j.at("members")) e.members_.push_back(ClassifierId::parse(s.get<std::string>()));
    if (e.members_.empty() || e.num_classes_ < 2) throw ParseError(0, "empty ensemble");
    const auto& params = j.at("parameters");
    const std::size_t c = e.num_classes_;
    const std::size_t m = e.members_.size();
    if (e.kind_ == MetaKind::LR) {
      e.lr_.num_classes = c;
      e.lr_.dimension = params.at("dimension").get<std::size_t>();
      e.lr_.weights = params.at("weights").get<std::vector<double>>();
      if (e.lr_.dimension != m * c || e.lr_.weights.size() != c * (m * c + 1)) {
        throw ParseError(0, "LR parameter shape does not match members x classes");
      }
    } else if (e.kind_ == MetaKind::NB) {
      e.nb_log_prior_ = params.at("log_prior").get<std::vector<double>>();
      e.nb_log_likelihood_ = params.at("log_likelihood").get<std::vector<double>>();
      if (e.nb_log_prior_.size() != c || e.nb_log_likelihood_.size() != m * c * c) {
        throw ParseError(0, "NB parameter shape does not match members x classes");
      }
    }
    return e;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("malformed stacked ensemble: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(0, std::string("invalid stacked ensemble: ") + e.what());
  }
}

}  // namespace divsel
