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

#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "divsel/error.hpp"
#include "divsel/pipeline.hpp"

namespace divsel::cli {

namespace {

constexpr const char* kOutputEnv = "DIVSEL_OUTPUT_DIR";

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ",") + s;
  return out;
}

std::vector<Metric> parse_metrics(const std::string& text) {
  std::string lower = text;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "all") return {kAllMetrics.begin(), kAllMetrics.end()};
  std::vector<Metric> out;
  for (const auto& m : split_list(text)) out.push_back(parse_metric(m));
  if (out.empty()) throw InvalidArgument("--metrics needs at least one metric");
  return out;
}

// Raw strings for the selection flags; resolved after parsing.
struct SelectionFlags {
  std::string linkage = "complete";
  std::string diversity = "double-fault";
  std::string metrics = "accuracy";
  std::string rule = "max-validation";
  std::optional<double> alpha;
  std::string meta = "LR";
  std::size_t meta_epochs = 500;
  double meta_step = 0.1;
  double meta_l2 = 1e-4;
};

void add_selection_flags(CLI::App* cmd, SelectionFlags& f) {
  cmd->add_option("--linkage", f.linkage, "single | complete | average | centroid")
      ->capture_default_str();
  cmd->add_option("--diversity", f.diversity, "Distance conversion: double-fault | disagreement")
      ->capture_default_str();
  cmd->add_option("--metrics", f.metrics,
                  "Per-cluster metric(s): comma list of accuracy,precision,recall,f1 or 'all'")
      ->capture_default_str();
  cmd->add_option("--rule", f.rule,
                  "Final choice: max-validation | max-diversity | weighted[:alpha]")
      ->capture_default_str();
  cmd->add_option("--alpha", f.alpha, "Validation weight for the weighted rule (default 0.5)");
  cmd->add_option("--meta", f.meta, "Meta-classifier: LR | NB | VOTE")->capture_default_str();
  cmd->add_option("--meta-epochs", f.meta_epochs, "Meta LR epochs")->capture_default_str();
  cmd->add_option("--meta-step", f.meta_step, "Meta LR step size")->capture_default_str();
  cmd->add_option("--meta-l2", f.meta_l2, "Meta LR L2 weight")->capture_default_str();
}

// Applies only the flags given on the command line.
void apply_selection_flags(CLI::App* cmd, const SelectionFlags& f, SelectionConfig& s) {
  auto given = [&](const char* name) { return cmd->count(name) > 0; };
  if (given("--linkage")) s.linkage = parse_linkage_method(f.linkage);
  if (given("--diversity")) s.diversity = parse_distance_conversion(f.diversity);
  if (given("--metrics")) s.metrics = parse_metrics(f.metrics);
  if (given("--rule")) s.rule = parse_final_rule(f.rule);
  if (f.alpha) {
    if (*f.alpha < 0.0 || *f.alpha > 1.0) throw InvalidArgument("--alpha must lie in [0, 1]");
    s.rule.alpha = *f.alpha;
  }
  if (given("--meta")) s.meta = parse_meta_kind(f.meta);
  if (given("--meta-epochs")) s.stack.lr.epochs = f.meta_epochs;
  if (given("--meta-step")) s.stack.lr.step = f.meta_step;
  if (given("--meta-l2")) s.stack.lr.l2 = f.meta_l2;
}

struct RunFlags {
  std::string config_file;
  std::string corpus;
  std::vector<double> ratios;
  std::uint64_t seed = 42;
  std::string extractors = "CV,TFIDF,HASHED";
  std::string algorithms = "NB,LR,KNN,NC";
  std::size_t min_df = 2;
  std::size_t dense_dim = 64;
  std::size_t knn_k = 5;
  double lr_step = 0.1;
  std::size_t lr_epochs = 300;
  double lr_l2 = 1e-4;
  std::size_t threads = 1;
  bool no_stem = false;
  bool no_stopwords = false;
  std::string out;
  std::string timestamp;
  SelectionFlags selection;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--config", f.config_file, "JSON run configuration; flags override it");
  cmd->add_option("--corpus", f.corpus, "Corpus CSV with header text,label");
  cmd->add_option("--ratios", f.ratios, "TRAIN VALIDATION TEST fractions (default 0.6 0.2 0.2)")
      ->expected(3);
  cmd->add_option("--seed", f.seed, "Global seed")->capture_default_str();
  cmd->add_option("--extractors", f.extractors, "Comma list of CV, TFIDF, HASHED, HASHED<d>")
      ->capture_default_str();
  cmd->add_option("--algorithms", f.algorithms, "Comma list of NB, LR, KNN, NC")
      ->capture_default_str();
  cmd->add_option("--min-df", f.min_df, "Minimum document frequency")->capture_default_str();
  cmd->add_option("--dense-dim", f.dense_dim, "HASHED projection dimension")->capture_default_str();
  cmd->add_option("--knn-k", f.knn_k, "Neighbours for KNN")->capture_default_str();
  cmd->add_option("--lr-step", f.lr_step, "Base LR step size")->capture_default_str();
  cmd->add_option("--lr-epochs", f.lr_epochs, "Base LR epochs")->capture_default_str();
  cmd->add_option("--lr-l2", f.lr_l2, "Base LR L2 weight")->capture_default_str();
  cmd->add_option("--threads", f.threads, "Pool training threads")->capture_default_str();
  cmd->add_flag("--no-stem", f.no_stem, "Disable suffix stemming");
  cmd->add_flag("--no-stopwords", f.no_stopwords, "Keep stop words");
  cmd->add_option("--out", f.out,
                  std::string("Output directory (default divsel-out; env ") + kOutputEnv + ")");
  cmd->add_option("--timestamp", f.timestamp, "Value for the report's generated_at field");
  add_selection_flags(cmd, f.selection);
}

RunConfig resolve_run_config(CLI::App* cmd, const RunFlags& f) {
  RunConfig c;
  if (!f.config_file.empty()) {
    std::ifstream in(f.config_file);
    if (!in) throw Error("cannot open config file '" + f.config_file + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw InvalidArgument(std::string("config file is not valid JSON: ") + e.what());
    }
    c = run_config_from_json(j);
  }
  auto given = [&](const char* name) { return cmd->count(name) > 0; };
  if (given("--corpus")) c.corpus = f.corpus;
  if (given("--ratios")) c.ratios = {f.ratios[0], f.ratios[1], f.ratios[2]};
  if (given("--seed")) c.seed = f.seed;
  if (given("--extractors")) c.extractors = split_list(f.extractors);
  if (given("--algorithms")) c.algorithms = split_list(f.algorithms);
  if (given("--min-df")) c.pool.min_document_frequency = f.min_df;
  if (given("--dense-dim")) c.pool.dense_dimension = f.dense_dim;
  if (given("--knn-k")) c.pool.learners.knn_k = f.knn_k;
  if (given("--lr-step")) c.pool.learners.lr.step = f.lr_step;
  if (given("--lr-epochs")) c.pool.learners.lr.epochs = f.lr_epochs;
  if (given("--lr-l2")) c.pool.learners.lr.l2 = f.lr_l2;
  if (given("--threads")) c.pool.threads = f.threads;
  if (f.no_stem) c.pool.preprocess.stem = false;
  if (f.no_stopwords) c.pool.preprocess.remove_stopwords = false;
  apply_selection_flags(cmd, f.selection, c.selection);
  if (given("--out")) {
    c.output_dir = f.out;
  } else if (const char* env = std::getenv(kOutputEnv); env != nullptr && *env != '\0') {
    c.output_dir = env;
  }
  if (c.corpus.empty()) throw InvalidArgument("no corpus given (--corpus or config 'corpus')");
  c.pool.seed = c.seed;
  c.selection.seed = c.seed;
  return c;
}

std::filesystem::path output_dir(CLI::App* cmd, const std::string& flag_value) {
  if (cmd->count("--out") > 0) return flag_value;
  if (const char* env = std::getenv(kOutputEnv); env != nullptr && *env != '\0') return env;
  return "divsel-out";
}

void emit(const std::string& path, const std::string& contents, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << contents;
  } else {
    write_text_file(path, contents);
  }
}

PredictionMatrix load_matrix(const std::string& csv_path, const std::string& meta_path) {
  if (meta_path.empty()) return load_prediction_matrix(csv_path);
  return load_prediction_matrix(csv_path, std::filesystem::path(meta_path));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"divsel: diversity-driven classifier selection for text ensembles"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "divsel 0.1.0");

  // run / compare ----------------------------------------------------------
  RunFlags run_flags;
  auto* run_cmd = app.add_subcommand("run", "Train the pool, select an ensemble, evaluate on TEST");
  add_run_flags(run_cmd, run_flags);

  RunFlags compare_flags;
  auto* compare_cmd = app.add_subcommand(
      "compare", "Compare monolithic classifiers, Groups A-D, Elbow and the random baseline");
  add_run_flags(compare_cmd, compare_flags);

  // ingest -----------------------------------------------------------------
  std::string ingest_matrix;
  std::string ingest_meta;
  std::string ingest_out;
  auto* ingest_cmd = app.add_subcommand("ingest", "Validate an external prediction matrix");
  ingest_cmd->add_option("--matrix", ingest_matrix, "Prediction CSV (truth,<id>...)")->required();
  ingest_cmd->add_option("--meta", ingest_meta, "Metadata JSON (default <matrix>.meta.json)");
  ingest_cmd->add_option("--out", ingest_out, "Write the summary here instead of stdout");

  // diversity --------------------------------------------------------------
  std::string div_matrix;
  std::string div_meta;
  std::string div_conversion = "double-fault";
  std::string div_out;
  auto* div_cmd = app.add_subcommand("diversity", "Pairwise dissimilarity matrix of a pool");
  div_cmd->add_option("--matrix", div_matrix, "Validation prediction CSV")->required();
  div_cmd->add_option("--meta", div_meta, "Metadata JSON (default <matrix>.meta.json)");
  div_cmd->add_option("--diversity", div_conversion, "double-fault | disagreement")
      ->capture_default_str();
  div_cmd->add_option("--out", div_out, "Output CSV (default stdout)");

  // cluster ----------------------------------------------------------------
  std::string cl_matrix;
  std::string cl_meta;
  std::string cl_dissimilarity;
  std::string cl_conversion = "double-fault";
  std::string cl_linkage = "complete";
  std::size_t cl_cut = 0;
  std::string cl_out;
  auto* cl_cmd = app.add_subcommand("cluster", "Hierarchical clustering of a pool");
  auto* cl_matrix_opt = cl_cmd->add_option("--matrix", cl_matrix, "Validation prediction CSV");
  auto* cl_diss_opt =
      cl_cmd->add_option("--dissimilarity", cl_dissimilarity, "Dissimilarity CSV");
  cl_matrix_opt->excludes(cl_diss_opt);
  cl_cmd->add_option("--meta", cl_meta, "Metadata JSON (default <matrix>.meta.json)");
  cl_cmd->add_option("--diversity", cl_conversion, "double-fault | disagreement")
      ->capture_default_str();
  cl_cmd->add_option("--linkage", cl_linkage, "single | complete | average | centroid")
      ->capture_default_str();
  cl_cmd->add_option("--cut", cl_cut, "Emit the flat clustering into k clusters instead");
  cl_cmd->add_option("--out", cl_out, "Output file (default stdout)");

  // select -----------------------------------------------------------------
  std::string sel_validation;
  std::string sel_validation_meta;
  std::string sel_test;
  std::string sel_test_meta;
  std::uint64_t sel_seed = 42;
  std::string sel_out;
  SelectionFlags sel_flags;
  auto* sel_cmd =
      app.add_subcommand("select", "Level sweep and final choice over a prediction matrix");
  sel_cmd->add_option("--validation", sel_validation, "Validation prediction CSV")->required();
  sel_cmd->add_option("--validation-meta", sel_validation_meta, "Its metadata JSON");
  sel_cmd->add_option("--test", sel_test, "Optional test prediction CSV for evaluation");
  sel_cmd->add_option("--test-meta", sel_test_meta, "Its metadata JSON");
  sel_cmd->add_option("--seed", sel_seed, "Seed for meta-learners")->capture_default_str();
  sel_cmd->add_option("--out", sel_out,
                      std::string("Output directory (default divsel-out; env ") + kOutputEnv + ")");
  add_selection_flags(sel_cmd, sel_flags);

  // stack ------------------------------------------------------------------
  std::string st_validation;
  std::string st_validation_meta;
  std::string st_test;
  std::string st_test_meta;
  std::string st_members;
  std::string st_meta_kind = "LR";
  std::uint64_t st_seed = 42;
  std::string st_out;
  auto* st_cmd = app.add_subcommand("stack", "Fit a stacked ensemble and predict");
  st_cmd->add_option("--validation", st_validation, "Validation prediction CSV")->required();
  st_cmd->add_option("--validation-meta", st_validation_meta, "Its metadata JSON");
  st_cmd->add_option("--test", st_test, "Test prediction CSV to predict and evaluate");
  st_cmd->add_option("--test-meta", st_test_meta, "Its metadata JSON");
  st_cmd->add_option("--members", st_members, "Comma list of member ids (default: all columns)");
  st_cmd->add_option("--meta", st_meta_kind, "LR | NB | VOTE")->capture_default_str();
  st_cmd->add_option("--seed", st_seed, "Seed")->capture_default_str();
  st_cmd->add_option("--out", st_out,
                     std::string("Output directory (default divsel-out; env ") + kOutputEnv + ")");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    // Help and version requests exit 0; every other parse failure is a usage error.
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (*run_cmd) {
      const auto config = resolve_run_config(run_cmd, run_flags);
      const auto stamp = run_flags.timestamp.empty() ? utc_timestamp() : run_flags.timestamp;
      const auto outcome = run_pipeline(config, stamp);
      const auto& test = outcome.report.at("test");
      out << "final ensemble (" << outcome.report.at("final").at("rule").get<std::string>()
          << ", k=" << outcome.report.at("final").at("k").get<std::size_t>()
          << "): " << test.at("members").dump() << "\n"
          << "test accuracy " << test.at("metrics").at("accuracy").get<double>()
          << " (random baseline " << test.at("random_baseline").get<double>() << ")\n"
          << "report: " << outcome.report_path.string() << "\n";
    } else if (*compare_cmd) {
      const auto config = resolve_run_config(compare_cmd, compare_flags);
      const auto stamp =
          compare_flags.timestamp.empty() ? utc_timestamp() : compare_flags.timestamp;
      const auto outcome = compare_pipeline(config, stamp);
      for (const auto& row : outcome.report.at("rows")) {
        out << row.at("name").get<std::string>() << "\taccuracy " << row.at("accuracy").dump()
            << "\n";
      }
      out << "report: " << outcome.report_path.string() << "\n";
    } else if (*ingest_cmd) {
      const auto pm = load_matrix(ingest_matrix, ingest_meta);
      emit(ingest_out, ingest_summary(pm).dump(2) + "\n", out);
    } else if (*div_cmd) {
      const auto pm = load_matrix(div_matrix, div_meta);
      const auto m = dissimilarity_matrix(pm, parse_distance_conversion(div_conversion));
      std::ostringstream s;
      write_dissimilarity_csv(s, m);
      emit(div_out, s.str(), out);
    } else if (*cl_cmd) {
      std::optional<DissimilarityMatrix> m;
      if (!cl_dissimilarity.empty()) {
        std::ifstream in(cl_dissimilarity, std::ios::binary);
        if (!in) throw Error("cannot open '" + cl_dissimilarity + "'");
        m = read_dissimilarity_csv(in);
      } else if (!cl_matrix.empty()) {
        m = dissimilarity_matrix(load_matrix(cl_matrix, cl_meta),
                                 parse_distance_conversion(cl_conversion));
      } else {
        throw InvalidArgument("cluster needs --matrix or --dissimilarity");
      }
      const auto z = linkage(*m, parse_linkage_method(cl_linkage));
      if (cl_cmd->count("--cut") > 0) {
        const auto assignment = fcluster(z, cl_cut);
        Json j;
        j["schema"] = "divsel.flat_clusters";
        j["schema_version"] = kReportSchemaVersion;
        j["k"] = cl_cut;
        Json clusters = Json::array();
        for (std::size_t i = 0; i < assignment.size(); ++i) {
          clusters.push_back({{"id", z.leaf_ids()[i].str()}, {"cluster", assignment[i]}});
        }
        j["clusters"] = std::move(clusters);
        emit(cl_out, j.dump(2) + "\n", out);
      } else {
        emit(cl_out, dendrogram_json(z), out);
      }
    } else if (*sel_cmd) {
      SelectionConfig config;
      apply_selection_flags(sel_cmd, sel_flags, config);
      config.seed = sel_seed;
      const auto dir = output_dir(sel_cmd, sel_out);
      std::filesystem::create_directories(dir);
      const auto validation = load_matrix(sel_validation, sel_validation_meta);
      const auto result = run_selection(validation, config);
      Json report = selection_report(result, config);
      std::ostringstream m;
      write_dissimilarity_csv(m, result.dissimilarity);
      write_text_file(dir / "dissimilarity.csv", m.str());
      write_text_file(dir / "dendrogram.json", dendrogram_json(result.dendrogram));
      write_text_file(dir / "final_stack.json", result.final_stack.to_json());
      if (!sel_test.empty()) {
        const auto test = load_matrix(sel_test, sel_test_meta);
        if (test.num_classes() != validation.num_classes()) {
          throw InvalidArgument("validation and test matrices disagree on num_classes");
        }
        Json compare;
        compare["schema"] = "divsel.compare_report";
        compare["schema_version"] = kReportSchemaVersion;
        compare["generated_at"] = utc_timestamp();
        compare["config"] = to_json(config);
        compare["labels"] = validation.label_names();
        compare["split_sizes"] = {{"train", 0},
                                  {"validation", validation.rows()},
                                  {"test", test.rows()}};
        compare["num_classes"] = test.num_classes();
        compare["rows"] = comparison_rows(validation, test, result, config);
        write_text_file(dir / "compare_report.json", compare.dump(2) + "\n");
      }
      write_text_file(dir / "selection.json", report.dump(2) + "\n");
      out << "final ensemble (" << config.rule.str() << ", k=" << result.final_candidate().level
          << "): " << Json(render_ids(result.final_candidate().members)).dump() << "\n";
    } else if (*st_cmd) {
      const auto dir = output_dir(st_cmd, st_out);
      std::filesystem::create_directories(dir);
      const auto validation = load_matrix(st_validation, st_validation_meta);
      std::vector<ClassifierId> members;
      if (st_members.empty()) {
        members = validation.ids();
      } else {
        for (const auto& s : split_list(st_members)) members.push_back(ClassifierId::parse(s));
      }
      const auto stack = fit_stack(validation, members, parse_meta_kind(st_meta_kind), st_seed);
      write_text_file(dir / "stack.json", stack.to_json());
      Json summary;
      summary["schema"] = "divsel.stack_summary";
      summary["schema_version"] = kReportSchemaVersion;
      summary["members"] = render_ids(members);
      summary["meta_kind"] = std::string(to_string(stack.meta_kind()));
      summary["validation"] = metrics_json(evaluate_stack(stack, validation).metrics);
      if (!st_test.empty()) {
        const auto test = load_matrix(st_test, st_test_meta);
        const auto eval = evaluate_stack(stack, test);
        summary["test"] = metrics_json(eval.metrics);
        std::ostringstream preds;
        preds << "truth,prediction\n";
        for (std::size_t i = 0; i < eval.predictions.size(); ++i) {
          preds << test.truth()[i] << ',' << eval.predictions[i] << '\n';
        }
        write_text_file(dir / "stack_predictions.csv", preds.str());
      } else {
        summary["test"] = nullptr;
      }
      write_text_file(dir / "stack_summary.json", summary.dump(2) + "\n");
      out << summary.dump(2) << "\n";
    }
  } catch (const std::exception& e) {
    err << "divsel: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace divsel::cli
