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

#include "divsel/prediction_matrix.hpp"

#include <charconv>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "divsel/csv.hpp"
#include "divsel/error.hpp"

namespace divsel {

namespace {

constexpr const char* kMetaFormat = "divsel.prediction_matrix";
constexpr int kMetaVersion = 1;

}  // namespace

PredictionMatrix::PredictionMatrix(std::vector<ClassifierId> ids, std::size_t num_classes,
                                   std::vector<Label> truth, std::vector<Label> predictions,
                                   Split split, std::vector<std::string> label_names)
    : ids_(std::move(ids)),
      num_classes_(num_classes),
      truth_(std::move(truth)),
      predictions_(std::move(predictions)),
      split_(split),
      label_names_(std::move(label_names)) {
  if (num_classes_ < 2) throw InvalidArgument("num_classes must be at least 2");
  if (!all_distinct(ids_)) throw InvalidArgument("duplicate classifier id in prediction matrix");
  if (predictions_.size() != truth_.size() * ids_.size()) {
    throw InvalidArgument("prediction table is not N x P");
  }
  if (!label_names_.empty() && label_names_.size() != num_classes_) {
    throw InvalidArgument("label name count does not match num_classes");
  }
  for (std::size_t i = 0; i < truth_.size(); ++i) {
    if (truth_[i] >= num_classes_) {
      throw InvalidArgument("truth label out of range in row " + std::to_string(i));
    }
  }
  for (std::size_t k = 0; k < predictions_.size(); ++k) {
    if (predictions_[k] >= num_classes_) {
      throw InvalidArgument("prediction out of range in row " + std::to_string(k / ids_.size()) +
                            ", column " + ids_[k % ids_.size()].str());
    }
  }
}

std::vector<Label> PredictionMatrix::column(std::size_t j) const {
  std::vector<Label> out(rows());
  for (std::size_t i = 0; i < rows(); ++i) out[i] = at(i, j);
  return out;
}

std::optional<std::size_t> PredictionMatrix::index_of(const ClassifierId& id) const {
  for (std::size_t j = 0; j < ids_.size(); ++j) {
    if (ids_[j] == id) return j;
  }
  return std::nullopt;
}

std::size_t PredictionMatrix::require(const ClassifierId& id) const {
  if (auto j = index_of(id)) return *j;
  throw InvalidArgument("classifier " + id.str() + " is not in the prediction matrix");
}

PredictionMatrix PredictionMatrix::select(std::span<const ClassifierId> members) const {
  std::vector<std::size_t> cols;
  cols.reserve(members.size());
  for (const auto& id : members) cols.push_back(require(id));
  std::vector<Label> table;
  table.reserve(rows() * cols.size());
  for (std::size_t i = 0; i < rows(); ++i) {
    for (std::size_t j : cols) table.push_back(at(i, j));
  }
  return PredictionMatrix({members.begin(), members.end()}, num_classes_, truth_, std::move(table),
                          split_, label_names_);
}

void write_prediction_csv(std::ostream& out, const PredictionMatrix& pm) {
  std::vector<std::string> header{"truth"};
  for (const auto& id : pm.ids()) header.push_back(id.str());
  csv::write_row(out, header);
  for (std::size_t i = 0; i < pm.rows(); ++i) {
    out << pm.truth()[i];
    for (std::size_t j = 0; j < pm.cols(); ++j) out << ',' << pm.at(i, j);
    out << '\n';
  }
}

std::string prediction_metadata_json(const PredictionMatrix& pm) {
  nlohmann::ordered_json j;
  j["format"] = kMetaFormat;
  j["version"] = kMetaVersion;
  j["num_classes"] = pm.num_classes();
  j["split"] = std::string(to_string(pm.split()));
  j["labels"] = pm.label_names();
  return j.dump(2) + "\n";
}

PredictionMetadata parse_prediction_metadata(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("metadata is not valid JSON: ") + e.what());
  }
  try {
    if (j.value("format", std::string{}) != kMetaFormat) {
      throw ParseError(0, "metadata 'format' must be \"" + std::string(kMetaFormat) + "\"");
    }
    if (j.at("version").get<int>() != kMetaVersion) {
      throw ParseError(0, "unsupported metadata version");
    }
    PredictionMetadata meta;
    meta.num_classes = j.at("num_classes").get<std::size_t>();
    meta.split = parse_split(j.at("split").get<std::string>());
    if (j.contains("labels")) meta.label_names = j.at("labels").get<std::vector<std::string>>();
    if (meta.num_classes < 2) throw ParseError(0, "num_classes must be at least 2");
    if (!meta.label_names.empty() && meta.label_names.size() != meta.num_classes) {
      throw ParseError(0, "label list length does not match num_classes");
    }
    return meta;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("malformed metadata: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(0, e.what());
  }
}

namespace {

Label parse_label(const std::string& field, std::size_t line, std::size_t num_classes,
                  const std::string& column) {
  Label value = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (field.empty() || ec != std::errc{} || ptr != last) {
    throw ParseError(line, "column '" + column + "': '" + field + "' is not a class index");
  }
  if (value >= num_classes) {
    throw ParseError(line, "column '" + column + "': label " + field + " >= num_classes " +
                               std::to_string(num_classes));
  }
  return value;
}

}  // namespace

PredictionMatrix read_prediction_csv(std::istream& in, const PredictionMetadata& meta) {
  const auto records = csv::read(in);
  if (records.empty()) throw ParseError(0, "prediction matrix file is empty");
  const auto& header = records.front();
  if (header.fields.empty() || header.fields[0] != "truth") {
    throw ParseError(header.line, "header must start with 'truth'");
  }
  if (header.fields.size() < 2) throw ParseError(header.line, "no classifier columns");
  std::vector<ClassifierId> ids;
  for (std::size_t f = 1; f < header.fields.size(); ++f) {
    try {
      ids.push_back(ClassifierId::parse(header.fields[f]));
    } catch (const InvalidArgument& e) {
      throw ParseError(header.line, e.what());
    }
    for (std::size_t g = 0; g + 1 < ids.size(); ++g) {
      if (ids[g] == ids.back()) {
        throw ParseError(header.line, "duplicate classifier id " + ids.back().str());
      }
    }
  }
  const std::size_t width = header.fields.size();
  std::vector<Label> truth;
  std::vector<Label> table;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != width) {
      throw ParseError(rec.line, "expected " + std::to_string(width) + " fields, found " +
                                     std::to_string(rec.fields.size()));
    }
    truth.push_back(parse_label(rec.fields[0], rec.line, meta.num_classes, "truth"));
    for (std::size_t f = 1; f < width; ++f) {
      table.push_back(parse_label(rec.fields[f], rec.line, meta.num_classes, header.fields[f]));
    }
  }
  if (truth.empty()) throw ParseError(0, "prediction matrix has no rows");
  return PredictionMatrix(std::move(ids), meta.num_classes, std::move(truth), std::move(table),
                          meta.split, meta.label_names);
}

std::filesystem::path metadata_path_for(const std::filesystem::path& csv_path) {
  return std::filesystem::path(csv_path.string() + ".meta.json");
}

void save_prediction_matrix(const PredictionMatrix& pm, const std::filesystem::path& csv_path) {
  std::ofstream out(csv_path, std::ios::binary);
  if (!out) throw Error("cannot write '" + csv_path.string() + "'");
  write_prediction_csv(out, pm);
  std::ofstream meta(metadata_path_for(csv_path), std::ios::binary);
  if (!meta) throw Error("cannot write metadata for '" + csv_path.string() + "'");
  meta << prediction_metadata_json(pm);
}

PredictionMatrix load_prediction_matrix(const std::filesystem::path& csv_path,
                                        std::optional<std::filesystem::path> meta_path) {
  const auto meta_file = meta_path.value_or(metadata_path_for(csv_path));
  std::ifstream meta_in(meta_file, std::ios::binary);
  if (!meta_in) throw Error("cannot open metadata file '" + meta_file.string() + "'");
  const auto meta = parse_prediction_metadata(meta_in);
  std::ifstream in(csv_path, std::ios::binary);
  if (!in) throw Error("cannot open prediction matrix '" + csv_path.string() + "'");
  return read_prediction_csv(in, meta);
}

}  // namespace divsel
