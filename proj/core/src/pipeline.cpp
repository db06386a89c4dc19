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

#include "divsel/pipeline.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include "divsel/error.hpp"
#include "divsel/random.hpp"

namespace divsel {

namespace {

template <typename F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

Json ids_json(std::span<const ClassifierId> ids) { return Json(render_ids(ids)); }

std::vector<Metric> parse_metric_list(const nlohmann::json& j) {
  std::vector<Metric> out;
  for (const auto& m : j) out.push_back(parse_metric(m.get<std::string>()));
  if (out.empty()) throw InvalidArgument("metric list is empty");
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Configuration

Json to_json(const SelectionConfig& config) {
  Json j;
  j["linkage"] = std::string(to_string(config.linkage));
  j["diversity"] = std::string(to_string(config.diversity));
  Json metrics = Json::array();
  for (Metric m : config.metrics) metrics.push_back(std::string(to_string(m)));
  j["metrics"] = std::move(metrics);
  j["rule"] = config.rule.kind == FinalRule::Kind::MaxDiversity    ? "max-diversity"
              : config.rule.kind == FinalRule::Kind::MaxValidation ? "max-validation"
                                                                    : "weighted";
  j["alpha"] = config.rule.alpha;
  j["meta"] = std::string(to_string(config.meta));
  j["meta_lr"] = {{"step", config.stack.lr.step},
                  {"epochs", config.stack.lr.epochs},
                  {"l2", config.stack.lr.l2}};
  j["meta_nb_alpha"] = config.stack.nb_alpha;
  j["seed"] = config.seed;
  return j;
}

Json to_json(const RunConfig& config) {
  Json j;
  j["corpus"] = config.corpus.generic_string();
  j["ratios"] = {config.ratios.train, config.ratios.validation, config.ratios.test};
  j["seed"] = config.seed;
  j["extractors"] = config.extractors;
  j["algorithms"] = config.algorithms;
  const auto& pp = config.pool.preprocess;
  j["preprocess"] = {{"remove_urls", pp.remove_urls},
                     {"strip_punctuation", pp.strip_punctuation},
                     {"lowercase", pp.lowercase},
                     {"remove_stopwords", pp.remove_stopwords},
                     {"stem", pp.stem},
                     {"stopwords", std::vector<std::string>(pp.stopwords.begin(),
                                                            pp.stopwords.end())}};
  j["min_df"] = config.pool.min_document_frequency;
  j["dense_dimension"] = config.pool.dense_dimension;
  j["lr"] = {{"step", config.pool.learners.lr.step},
             {"epochs", config.pool.learners.lr.epochs},
             {"l2", config.pool.learners.lr.l2}};
  j["knn_k"] = config.pool.learners.knn_k;
  j["nb_alpha"] = config.pool.learners.nb_alpha;
  j["threads"] = config.pool.threads;
  Json sel = to_json(config.selection);
  sel.erase("seed");
  j["selection"] = std::move(sel);
  j["output_dir"] = config.output_dir.generic_string();
  return j;
}

RunConfig run_config_from_json(const nlohmann::json& j) {
  RunConfig c;
  try {
    if (j.contains("corpus")) c.corpus = j.at("corpus").get<std::string>();
    if (j.contains("ratios")) {
      const auto r = j.at("ratios").get<std::vector<double>>();
      if (r.size() != 3) throw InvalidArgument("ratios needs three values");
      c.ratios = {r[0], r[1], r[2]};
    }
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("extractors")) c.extractors = j.at("extractors").get<std::vector<std::string>>();
    if (j.contains("algorithms")) c.algorithms = j.at("algorithms").get<std::vector<std::string>>();
    if (j.contains("preprocess")) {
      const auto& p = j.at("preprocess");
      auto& pp = c.pool.preprocess;
      pp.remove_urls = p.value("remove_urls", pp.remove_urls);
      pp.strip_punctuation = p.value("strip_punctuation", pp.strip_punctuation);
      pp.lowercase = p.value("lowercase", pp.lowercase);
      pp.remove_stopwords = p.value("remove_stopwords", pp.remove_stopwords);
      pp.stem = p.value("stem", pp.stem);
      if (p.contains("stopwords")) {
        const auto words = p.at("stopwords").get<std::vector<std::string>>();
        pp.stopwords = {words.begin(), words.end()};
      }
    }
    c.pool.min_document_frequency = j.value("min_df", c.pool.min_document_frequency);
    c.pool.dense_dimension = j.value("dense_dimension", c.pool.dense_dimension);
    if (j.contains("lr")) {
      auto& lr = c.pool.learners.lr;
      lr.step = j.at("lr").value("step", lr.step);
      lr.epochs = j.at("lr").value("epochs", lr.epochs);
      lr.l2 = j.at("lr").value("l2", lr.l2);
    }
    c.pool.learners.knn_k = j.value("knn_k", c.pool.learners.knn_k);
    c.pool.learners.nb_alpha = j.value("nb_alpha", c.pool.learners.nb_alpha);
    c.pool.threads = j.value("threads", c.pool.threads);
    if (j.contains("selection")) {
      const auto& s = j.at("selection");
      auto& sel = c.selection;
      if (s.contains("linkage")) sel.linkage = parse_linkage_method(s.at("linkage").get<std::string>());
      if (s.contains("diversity")) {
        sel.diversity = parse_distance_conversion(s.at("diversity").get<std::string>());
      }
      if (s.contains("metrics")) sel.metrics = parse_metric_list(s.at("metrics"));
      if (s.contains("rule")) sel.rule = parse_final_rule(s.at("rule").get<std::string>());
      if (s.contains("alpha")) sel.rule.alpha = s.at("alpha").get<double>();
      if (s.contains("meta")) sel.meta = parse_meta_kind(s.at("meta").get<std::string>());
      if (s.contains("meta_lr")) {
        auto& lr = sel.stack.lr;
        lr.step = s.at("meta_lr").value("step", lr.step);
        lr.epochs = s.at("meta_lr").value("epochs", lr.epochs);
        lr.l2 = s.at("meta_lr").value("l2", lr.l2);
      }
      sel.stack.nb_alpha = s.value("meta_nb_alpha", sel.stack.nb_alpha);
    }
    if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed run configuration: ") + e.what());
  }
  c.pool.seed = c.seed;
  c.selection.seed = c.seed;
  return c;
}

// ---------------------------------------------------------------------------
// Selection

EvalReport evaluate_columns(const PredictionMatrix& pm) {
  EvalReport report;
  for (std::size_t j = 0; j < pm.cols(); ++j) {
    const auto col = pm.column(j);
    report.entries.push_back(
        {pm.ids()[j].str(), {pm.ids()[j]}, evaluate(col, pm.truth(), pm.num_classes())});
  }
  return report;
}

std::uint64_t candidate_seed(std::uint64_t seed, Metric metric, std::size_t level) {
  return derive_seed(derive_seed(seed, static_cast<std::uint64_t>(metric)),
                     static_cast<std::uint64_t>(level));
}

SelectionResult run_selection(const PredictionMatrix& validation, const SelectionConfig& config) {
  if (config.metrics.empty()) throw InvalidArgument("no selection metric configured");
  auto scores = stage("evaluate_pool", [&] { return evaluate_columns(validation); });
  auto m = stage("dissimilarity_matrix",
                 [&] { return dissimilarity_matrix(validation, config.diversity); });
  auto z = stage("linkage", [&] { return linkage(m, config.linkage); });

  std::vector<EnsembleCandidate> candidates;
  std::vector<StackedEnsemble> stacks;
  stage("hierarchy_select", [&] {
    for (Metric metric : config.metrics) {
      auto level = hierarchy_select(z, m, scores, metric);
      for (auto& c : level) {
        auto stack = fit_stack(validation, c.members, config.meta,
                               candidate_seed(config.seed, metric, c.level), config.stack);
        const auto fitted = predict_stack(stack, validation);
        c.validation_score =
            evaluate(fitted, validation.truth(), validation.num_classes()).get(metric);
        candidates.push_back(std::move(c));
        stacks.push_back(std::move(stack));
      }
    }
  });
  const std::size_t final_index =
      stage("choose_final", [&] { return choose_final_index(candidates, config.rule); });

  std::optional<std::size_t> elbow_level;
  std::optional<EnsembleCandidate> elbow;
  if (z.leaf_count() >= 3) {
    elbow_level = stage("elbow_select", [&] { return elbow_select(z, m); });
    elbow = candidates[*elbow_level - 1];  // first metric's sweep
  }
  StackedEnsemble final_stack = stacks[final_index];
  return SelectionResult{std::move(scores), std::move(m),          std::move(z),
                         std::move(candidates), final_index,        std::move(final_stack),
                         elbow_level,           std::move(elbow)};
}

Json metrics_json(const Metrics& m) {
  Json j;
  j["accuracy"] = m.accuracy;
  j["precision"] = m.precision;
  j["recall"] = m.recall;
  j["f1"] = m.f1;
  return j;
}

Json candidate_json(const EnsembleCandidate& c) {
  Json j;
  j["metric"] = std::string(to_string(c.metric));
  j["k"] = c.level;
  j["members"] = ids_json(c.members);
  j["mean_pairwise_distance"] = c.mean_pairwise_distance;
  j["validation_score"] = c.validation_score ? Json(*c.validation_score) : Json(nullptr);
  return j;
}

Json selection_report(const SelectionResult& result, const SelectionConfig& config) {
  Json j;
  j["schema"] = "divsel.selection_report";
  j["schema_version"] = kReportSchemaVersion;
  j["config"] = to_json(config);
  j["pool"] = ids_json(result.dissimilarity.ids());
  j["dendrogram_inversions"] = result.dendrogram.has_inversions();
  Json sweeps = Json::array();
  for (Metric metric : config.metrics) {
    Json sweep;
    sweep["metric"] = std::string(to_string(metric));
    Json list = Json::array();
    for (const auto& c : result.candidates) {
      if (c.metric == metric) list.push_back(candidate_json(c));
    }
    sweep["candidates"] = std::move(list);
    sweeps.push_back(std::move(sweep));
  }
  j["sweeps"] = std::move(sweeps);
  if (result.elbow) {
    j["elbow"] = candidate_json(*result.elbow);
  } else {
    j["elbow"] = nullptr;
  }
  Json final_choice = candidate_json(result.final_candidate());
  final_choice["rule"] = config.rule.str();
  j["final"] = std::move(final_choice);
  return j;
}

StackEvaluation evaluate_stack(const StackedEnsemble& ensemble, const PredictionMatrix& test) {
  StackEvaluation out;
  out.members = ensemble.members();
  out.predictions = predict_stack(ensemble, test);
  out.metrics = evaluate(out.predictions, test.truth(), test.num_classes());
  return out;
}

// ---------------------------------------------------------------------------
// Pipelines

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << contents;
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

namespace {

struct TrainedPipeline {
  LabeledCorpus corpus;
  Pool pool;
  PredictionMatrix validation;
  SelectionResult selection;
};

TrainedPipeline train_and_select(const RunConfig& config) {
  auto raw = stage("read_corpus", [&] { return read_corpus_csv(config.corpus); });
  auto corpus = stage("split_corpus", [&] { return split_corpus(raw, config.ratios, config.seed); });
  PoolConfig pool_config = config.pool;
  pool_config.seed = config.seed;
  auto pool = stage("train_pool", [&] {
    return train_pool(corpus, config.extractors, config.algorithms, pool_config);
  });
  auto validation =
      stage("predict_validation", [&] { return predict_matrix(pool, corpus, Split::Validation); });
  SelectionConfig sel = config.selection;
  sel.seed = config.seed;
  auto selection = run_selection(validation, sel);
  return {std::move(corpus), std::move(pool), std::move(validation), std::move(selection)};
}

Json header(const char* schema, const std::string& generated_at) {
  Json j;
  j["schema"] = schema;
  j["schema_version"] = kReportSchemaVersion;
  j["generated_at"] = generated_at;
  return j;
}

Json split_sizes(const LabeledCorpus& corpus) {
  return {{"train", corpus.count(Split::Train)},
          {"validation", corpus.count(Split::Validation)},
          {"test", corpus.count(Split::Test)}};
}

Json row_json(const std::string& group, const std::string& name,
              std::span<const ClassifierId> members, const std::optional<Metrics>& metrics,
              std::optional<double> accuracy_only = std::nullopt) {
  Json j;
  j["name"] = name + " (" + std::to_string(members.size()) + ")";
  j["group"] = group;
  j["member_count"] = members.size();
  j["members"] = ids_json(members);
  if (metrics) {
    j["accuracy"] = metrics->accuracy;
    j["precision"] = metrics->precision;
    j["recall"] = metrics->recall;
    j["f1"] = metrics->f1;
  } else {
    j["accuracy"] = accuracy_only ? Json(*accuracy_only) : Json(nullptr);
    j["precision"] = nullptr;
    j["recall"] = nullptr;
    j["f1"] = nullptr;
  }
  return j;
}

std::vector<std::string> unique_tokens(std::span<const ClassifierId> ids, bool algorithm) {
  std::vector<std::string> out;
  for (const auto& id : ids) {
    const auto& t = algorithm ? id.algorithm() : id.extractor();
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  }
  return out;
}

}  // namespace

Json comparison_rows(const PredictionMatrix& validation, const PredictionMatrix& test,
                     const SelectionResult& selection, const SelectionConfig& config) {
  const auto& ids = validation.ids();
  Json rows = Json::array();

  for (std::size_t j = 0; j < test.cols(); ++j) {
    const auto col = test.column(j);
    const ClassifierId member[] = {test.ids()[j]};
    Json row = row_json("MONOLITHIC", test.ids()[j].str(), member,
                        evaluate(col, test.truth(), test.num_classes()));
    rows.push_back(std::move(row));
  }

  std::uint64_t group_index = 0;
  auto stacked_row = [&](const std::string& group, const std::string& name,
                         const std::vector<ClassifierId>& members) {
    const auto stack = fit_stack(validation, members, config.meta,
                                 derive_seed(config.seed, 1000 + group_index++), config.stack);
    const auto eval = evaluate_stack(stack, test);
    rows.push_back(row_json(group, name, members, eval.metrics));
  };

  const std::string meta(to_string(config.meta));
  for (const auto& a : unique_tokens(ids, true)) {
    stacked_row("A", "A-" + a + "-" + meta,
                group_members(ids, {GroupMode::Kind::Algorithm, a}));
  }
  for (const auto& e : unique_tokens(ids, false)) {
    stacked_row("B", "B-" + e + "-" + meta,
                group_members(ids, {GroupMode::Kind::Extractor, e}));
  }
  stacked_row("C", "C-" + meta, group_members(ids, {GroupMode::Kind::All, {}}));

  {
    const auto eval = evaluate_stack(selection.final_stack, test);
    Json row = row_json("D", "D-" + meta, selection.final_candidate().members, eval.metrics);
    row["k"] = selection.final_candidate().level;
    row["rule"] = config.rule.str();
    rows.push_back(std::move(row));
  }
  if (selection.elbow) {
    const auto stack =
        fit_stack(validation, selection.elbow->members, config.meta,
                  candidate_seed(config.seed, selection.elbow->metric, selection.elbow->level),
                  config.stack);
    const auto eval = evaluate_stack(stack, test);
    Json row = row_json("ELBOW", "ELBOW-" + meta, selection.elbow->members, eval.metrics);
    row["k"] = selection.elbow->level;
    rows.push_back(std::move(row));
  }
  rows.push_back(row_json("BASELINE", "BASELINE", {}, std::nullopt,
                          random_baseline(test.num_classes())));
  return rows;
}

RunOutcome run_pipeline(const RunConfig& config, const std::string& generated_at) {
  const auto& out_dir = config.output_dir;
  stage("prepare_output", [&] {
    std::filesystem::create_directories(out_dir);
    return 0;
  });
  auto trained = train_and_select(config);
  const auto& sel = trained.selection;
  const auto& final_c = sel.final_candidate();

  auto test = stage("predict_test", [&] {
    Pool members;
    for (const auto& id : final_c.members) {
      for (const auto& c : trained.pool) {
        if (c.id() == id) members.push_back(c);
      }
    }
    return predict_matrix(members, trained.corpus, Split::Test);
  });
  const auto final_eval = stage("predict_stack", [&] { return evaluate_stack(sel.final_stack, test); });

  SelectionConfig sel_config = config.selection;
  sel_config.seed = config.seed;

  Json report = header("divsel.run_report", generated_at);
  report["config"] = to_json(config);
  report["labels"] = trained.corpus.label_names();
  report["split_sizes"] = split_sizes(trained.corpus);
  Json pool = Json::array();
  for (const auto& e : sel.pool_scores.entries) {
    pool.push_back({{"id", e.name}, {"validation", metrics_json(e.metrics)}});
  }
  report["pool"] = std::move(pool);
  Json candidates = Json::array();
  for (const auto& c : sel.candidates) candidates.push_back(candidate_json(c));
  report["candidates"] = std::move(candidates);
  report["elbow_k"] = sel.elbow_level ? Json(*sel.elbow_level) : Json(nullptr);
  Json final_json = candidate_json(final_c);
  final_json["rule"] = config.selection.rule.str();
  final_json["meta_kind"] = std::string(to_string(config.selection.meta));
  report["final"] = std::move(final_json);
  report["test"] = {{"members", ids_json(final_eval.members)},
                    {"metrics", metrics_json(final_eval.metrics)},
                    {"random_baseline", random_baseline(test.num_classes())}};
  report["artifacts"] = {{"validation_predictions", "validation_predictions.csv"},
                         {"test_predictions", "test_predictions.csv"},
                         {"dissimilarity", "dissimilarity.csv"},
                         {"dendrogram", "dendrogram.json"},
                         {"selection", "selection.json"},
                         {"evaluation", "evaluation.json"},
                         {"final_stack", "final_stack.json"}};

  stage("write_artifacts", [&] {
    save_prediction_matrix(trained.validation, out_dir / "validation_predictions.csv");
    save_prediction_matrix(test, out_dir / "test_predictions.csv");
    std::ostringstream m;
    write_dissimilarity_csv(m, sel.dissimilarity);
    write_text_file(out_dir / "dissimilarity.csv", m.str());
    write_text_file(out_dir / "dendrogram.json", dendrogram_json(sel.dendrogram));
    write_text_file(out_dir / "selection.json", selection_report(sel, sel_config).dump(2) + "\n");

    Json evaluation = header("divsel.evaluation_report", generated_at);
    evaluation["labels"] = trained.corpus.label_names();
    Json entries = Json::array();
    for (const auto& e : sel.pool_scores.entries) {
      entries.push_back({{"name", e.name},
                         {"split", "VALIDATION"},
                         {"members", ids_json(e.members)},
                         {"metrics", metrics_json(e.metrics)}});
    }
    entries.push_back({{"name", "FINAL"},
                       {"split", "TEST"},
                       {"members", ids_json(final_eval.members)},
                       {"metrics", metrics_json(final_eval.metrics)}});
    evaluation["entries"] = std::move(entries);
    write_text_file(out_dir / "evaluation.json", evaluation.dump(2) + "\n");
    write_text_file(out_dir / "final_stack.json", sel.final_stack.to_json());
    write_text_file(out_dir / "run_report.json", report.dump(2) + "\n");
    return 0;
  });
  return {std::move(report), out_dir / "run_report.json"};
}

RunOutcome compare_pipeline(const RunConfig& config, const std::string& generated_at) {
  const auto& out_dir = config.output_dir;
  stage("prepare_output", [&] {
    std::filesystem::create_directories(out_dir);
    return 0;
  });
  auto trained = train_and_select(config);
  auto test = stage("predict_test",
                    [&] { return predict_matrix(trained.pool, trained.corpus, Split::Test); });
  SelectionConfig sel_config = config.selection;
  sel_config.seed = config.seed;
  auto rows = stage("compare", [&] {
    return comparison_rows(trained.validation, test, trained.selection, sel_config);
  });

  Json report = header("divsel.compare_report", generated_at);
  report["config"] = to_json(config);
  report["labels"] = trained.corpus.label_names();
  report["split_sizes"] = split_sizes(trained.corpus);
  report["num_classes"] = test.num_classes();
  report["rows"] = std::move(rows);
  stage("write_artifacts", [&] {
    save_prediction_matrix(test, out_dir / "test_predictions_full.csv");
    write_text_file(out_dir / "compare_report.json", report.dump(2) + "\n");
    return 0;
  });
  return {std::move(report), out_dir / "compare_report.json"};
}

Json ingest_summary(const PredictionMatrix& pm) {
  Json j;
  j["schema"] = "divsel.ingest_summary";
  j["schema_version"] = kReportSchemaVersion;
  j["split"] = std::string(to_string(pm.split()));
  j["num_classes"] = pm.num_classes();
  j["rows"] = pm.rows();
  j["columns"] = ids_json(pm.ids());
  j["labels"] = pm.label_names();
  Json accuracy = Json::object();
  for (std::size_t c = 0; c < pm.cols(); ++c) {
    const auto col = pm.column(c);
    accuracy[pm.ids()[c].str()] = evaluate(col, pm.truth(), pm.num_classes()).accuracy;
  }
  j["accuracy"] = std::move(accuracy);
  return j;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace divsel
