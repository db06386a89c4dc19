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

#include "divsel/diversity.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "divsel/csv.hpp"
#include "divsel/error.hpp"

namespace divsel {

double double_fault(std::span<const Label> a, std::span<const Label> b,
                    std::span<const Label> truth) {
  if (a.size() != truth.size() || b.size() != truth.size()) {
    throw InvalidArgument("double_fault: prediction and truth lengths differ");
  }
  if (truth.empty()) throw InvalidArgument("double_fault: no instances");
  std::size_t both_wrong = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (a[i] != truth[i] && b[i] != truth[i]) ++both_wrong;
  }
  return static_cast<double>(both_wrong) / static_cast<double>(truth.size());
}

double disagreement(std::span<const Label> a, std::span<const Label> b) {
  if (a.size() != b.size()) throw InvalidArgument("disagreement: lengths differ");
  if (a.empty()) throw InvalidArgument("disagreement: no instances");
  std::size_t differ = 0;
  for (std::size_t i = 0; i < a.size(); ++i) differ += a[i] != b[i] ? 1 : 0;
  return static_cast<double>(differ) / static_cast<double>(a.size());
}

std::string_view to_string(DistanceConversion conversion) noexcept {
  switch (conversion) {
    case DistanceConversion::DoubleFault:
      return "double-fault";
    case DistanceConversion::Disagreement:
      return "disagreement";
  }
  return "unknown";
}

DistanceConversion parse_distance_conversion(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "double-fault" || lower == "df") return DistanceConversion::DoubleFault;
  if (lower == "disagreement") return DistanceConversion::Disagreement;
  throw InvalidArgument("unknown diversity conversion '" + std::string(text) +
                        "' (expected double-fault or disagreement)");
}

PairDistance pair_distance(DistanceConversion conversion) {
  switch (conversion) {
    case DistanceConversion::Disagreement:
      return [](std::span<const Label> a, std::span<const Label> b, std::span<const Label>) {
        return disagreement(a, b);
      };
    case DistanceConversion::DoubleFault:
      break;
  }
  return [](std::span<const Label> a, std::span<const Label> b, std::span<const Label> truth) {
    return 1.0 - double_fault(a, b, truth);
  };
}

DissimilarityMatrix::DissimilarityMatrix(std::vector<ClassifierId> ids, std::vector<double> values)
    : ids_(std::move(ids)), values_(std::move(values)) {
  const std::size_t p = ids_.size();
  if (values_.size() != p * p) throw InvalidArgument("dissimilarity matrix is not square");
  if (!all_distinct(ids_)) throw InvalidArgument("duplicate classifier id in dissimilarity matrix");
  for (std::size_t i = 0; i < p; ++i) {
    if (at(i, i) != 0.0) throw InvalidArgument("dissimilarity matrix diagonal must be zero");
    for (std::size_t j = 0; j < p; ++j) {
      const double v = at(i, j);
      if (!(v >= 0.0 && v <= 1.0)) {
        throw InvalidArgument("dissimilarity entry (" + std::to_string(i) + "," +
                              std::to_string(j) + ") is outside [0, 1]");
      }
      if (v != at(j, i)) {
        throw InvalidArgument("dissimilarity matrix is not symmetric at (" + std::to_string(i) +
                              "," + std::to_string(j) + ")");
      }
    }
  }
}

std::size_t DissimilarityMatrix::index_of(const ClassifierId& id) const {
  for (std::size_t j = 0; j < ids_.size(); ++j) {
    if (ids_[j] == id) return j;
  }
  throw InvalidArgument("classifier " + id.str() + " is not in the dissimilarity matrix");
}

double DissimilarityMatrix::mean_pairwise(std::span<const std::size_t> members) const {
  if (members.size() < 2) return 0.0;
  double total = 0.0;
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = a + 1; b < members.size(); ++b) total += at(members[a], members[b]);
  }
  const double pairs = static_cast<double>(members.size() * (members.size() - 1) / 2);
  return total / pairs;
}

DissimilarityMatrix dissimilarity_matrix(const PredictionMatrix& pm,
                                         const PairDistance& distance) {
  const std::size_t p = pm.cols();
  if (p < 2) throw InvalidArgument("dissimilarity matrix needs at least 2 classifiers");
  std::vector<std::vector<Label>> columns;
  columns.reserve(p);
  for (std::size_t j = 0; j < p; ++j) columns.push_back(pm.column(j));
  std::vector<double> values(p * p, 0.0);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i + 1; j < p; ++j) {
      const double d = distance(columns[i], columns[j], pm.truth());
      values[i * p + j] = d;
      values[j * p + i] = d;
    }
  }
  return DissimilarityMatrix(pm.ids(), std::move(values));
}

DissimilarityMatrix dissimilarity_matrix(const PredictionMatrix& pm,
                                         DistanceConversion conversion) {
  return dissimilarity_matrix(pm, pair_distance(conversion));
}

void write_dissimilarity_csv(std::ostream& out, const DissimilarityMatrix& m) {
  std::vector<std::string> header{""};
  for (const auto& id : m.ids()) header.push_back(id.str());
  csv::write_row(out, header);
  char buf[32];
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << m.ids()[i].str();
    for (std::size_t j = 0; j < m.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m.at(i, j));
      out << ',' << buf;
    }
    out << '\n';
  }
}

DissimilarityMatrix read_dissimilarity_csv(std::istream& in) {
  const auto records = csv::read(in);
  if (records.empty()) throw ParseError(0, "dissimilarity file is empty");
  const auto& header = records.front();
  if (header.fields.size() < 2) throw ParseError(header.line, "missing id header");
  const std::size_t p = header.fields.size() - 1;
  std::vector<ClassifierId> ids;
  try {
    for (std::size_t f = 1; f < header.fields.size(); ++f) {
      ids.push_back(ClassifierId::parse(header.fields[f]));
    }
  } catch (const InvalidArgument& e) {
    throw ParseError(header.line, e.what());
  }
  if (records.size() != p + 1) {
    throw ParseError(0, "expected " + std::to_string(p) + " matrix rows, found " +
                            std::to_string(records.size() - 1));
  }
  std::vector<double> values;
  values.reserve(p * p);
  for (std::size_t r = 1; r <= p; ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != p + 1) throw ParseError(rec.line, "row length mismatch");
    if (rec.fields[0] != header.fields[r]) {
      throw ParseError(rec.line, "row id '" + rec.fields[0] + "' does not match column order");
    }
    for (std::size_t f = 1; f <= p; ++f) {
      const std::string& s = rec.fields[f];
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError(rec.line, "'" + s + "' is not a number");
      }
      values.push_back(v);
    }
  }
  try {
    return DissimilarityMatrix(std::move(ids), std::move(values));
  } catch (const InvalidArgument& e) {
    throw ParseError(0, e.what());
  }
}

}  // namespace divsel
