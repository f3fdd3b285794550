// Command-line front end for the trust-feature pipeline: generate or ingest
// logs, inject labeled hijacks, extract features, train and evaluate models,
// or run everything from one config file.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ueba/csv.hpp"
#include "ueba/eval.hpp"
#include "ueba/features.hpp"
#include "ueba/ingest.hpp"
#include "ueba/inject.hpp"
#include "ueba/model_io.hpp"
#include "ueba/pipeline.hpp"
#include "ueba/syngen.hpp"

namespace fs = std::filesystem;
using namespace ueba;

namespace {

std::vector<int> read_label_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open labels: " + path);
  std::vector<int> labels;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first && (line == "label" || line == "labels")) {
      first = false;
      continue;
    }
    first = false;
    labels.push_back(std::stoi(line));
  }
  return labels;
}

Matrix matrix_for_columns(const FeatureDataset& ds, const std::vector<size_t>& cols) {
  Matrix m(ds.n_rows, cols.size());
  for (size_t r = 0; r < ds.n_rows; ++r)
    for (size_t j = 0; j < cols.size(); ++j) m.at(r, j) = ds.at(r, cols[j]);
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"behavioral trust pipeline for account-hijack detection"};
  app.require_subcommand(1);

  // --- syngen ---
  auto* sc_syngen = app.add_subcommand("syngen", "generate a synthetic benign corpus");
  GeneratorConfig gen;
  std::string out_path = "canonical.csv";
  sc_syngen->add_option("--users", gen.users, "number of users");
  sc_syngen->add_option("--days", gen.days, "days of activity");
  sc_syngen->add_option("--seed", gen.seed, "RNG seed");
  sc_syngen->add_option("--vocab-size", gen.vocabulary_size, "event-type vocabulary size");
  sc_syngen->add_option("--rate-min", gen.rate_min, "min mean events/day");
  sc_syngen->add_option("--rate-max", gen.rate_max, "max mean events/day");
  sc_syngen->add_option("--output", out_path, "output CSV")->required();

  // --- ingest ---
  auto* sc_ingest = app.add_subcommand("ingest", "normalize a raw JSON log to canonical CSV");
  std::string in_path;
  IngestConfig ingest_cfg;
  std::string ingest_out = "canonical.csv";
  sc_ingest->add_option("--input", in_path, "raw JSON log (NDJSON or array)")->required();
  sc_ingest->add_option("--output", ingest_out, "output CSV")->required();
  sc_ingest->add_option("--top-users", ingest_cfg.top_n_users,
                        "keep only the N most active users (0 = all)");
  sc_ingest->add_option("--seed", ingest_cfg.rng_seed, "RNG seed for synthetic IPs");
  sc_ingest->add_option("--deviation-prob", ingest_cfg.primary_ip_deviation_prob,
                        "synthetic IP deviation probability");

  // --- inject ---
  auto* sc_inject = app.add_subcommand("inject", "inject labeled hijack incidents");
  std::string inject_in, inject_out = "injected.csv", intervals_out = "intervals.json";
  InjectionConfig inj_cfg;
  sc_inject->add_option("--input", inject_in, "canonical CSV")->required();
  sc_inject->add_option("--output", inject_out, "modified CSV")->required();
  sc_inject->add_option("--intervals", intervals_out, "ground-truth intervals JSON");
  sc_inject->add_option("--seed", inj_cfg.rng_seed, "RNG seed");
  sc_inject->add_option("--max-incidents", inj_cfg.max_incidents, "incident cap");
  sc_inject->add_option("--min-candidate-events", inj_cfg.min_candidate_events,
                        "candidate threshold");

  // --- featurize ---
  auto* sc_feat = app.add_subcommand("featurize", "windowed trust features from a corpus");
  std::string feat_in, feat_intervals, feat_out = "features.csv", feat_dict;
  FeaturizeConfig feat_cfg;
  sc_feat->add_option("--input", feat_in, "canonical CSV")->required();
  sc_feat->add_option("--intervals", feat_intervals, "intervals JSON (omit = all normal)");
  sc_feat->add_option("--output", feat_out, "feature CSV")->required();
  sc_feat->add_option("--dict", feat_dict, "feature dictionary JSON");
  sc_feat->add_option("--window", feat_cfg.window_size, "window size in events");
  sc_feat->add_option("--step", feat_cfg.step, "window step in events");
  sc_feat->add_flag("--parallel", feat_cfg.parallel, "featurize users with OpenMP");

  // --- train ---
  auto* sc_train = app.add_subcommand("train", "fit a random forest on extracted features");
  std::string train_features, train_labels, model_out = "model.bin";
  std::string train_selector = "combined";
  ForestConfig forest_cfg;
  sc_train->add_option("--features", train_features, "feature CSV")->required();
  sc_train->add_option("--labels", train_labels, "label CSV (default: label column)");
  sc_train->add_option("--model-out", model_out, "model file")->required();
  sc_train->add_option("--seed", forest_cfg.rng_seed, "RNG seed");
  sc_train->add_option("--trees", forest_cfg.n_trees, "number of trees");
  sc_train->add_option("--selector", train_selector,
                       "feature group: hadith|temporal|combined|raw_counts");
  sc_train->add_flag("--parallel", forest_cfg.parallel, "train trees with OpenMP");

  // --- evaluate ---
  auto* sc_eval = app.add_subcommand("evaluate", "score models and write a report");
  std::string eval_features, eval_labels, report_dir = "report";
  std::vector<std::string> eval_models;
  bool eval_fresh = false, eval_no_iso = false;
  EvalConfig eval_cfg;
  sc_eval->add_option("--features", eval_features, "feature CSV")->required();
  sc_eval->add_option("--labels", eval_labels, "label CSV (default: label column)");
  sc_eval->add_option("--models", eval_models,
                      "trained model files to score on the full input");
  sc_eval->add_option("--report-dir", report_dir, "output directory")->required();
  sc_eval->add_option("--seed", eval_cfg.split.rng_seed, "split/model seed");
  sc_eval->add_option("--train-fraction", eval_cfg.split.train_fraction, "train fraction");
  sc_eval->add_option("--trees", eval_cfg.forest.n_trees, "forest size");
  sc_eval->add_flag("--fresh", eval_fresh,
                    "ignore --models; split, train and evaluate the standard set");
  sc_eval->add_flag("--no-isolation-forest", eval_no_iso, "skip the unsupervised baseline");

  // --- ablate ---
  auto* sc_ablate = app.add_subcommand("ablate", "remove-axis / only-axis grid");
  std::string ab_features, ab_report_dir = "report";
  std::vector<std::string> ab_axes = {"all"};
  EvalConfig ab_cfg;
  sc_ablate->add_option("--features", ab_features, "feature CSV")->required();
  sc_ablate->add_option("--report-dir", ab_report_dir, "output directory")->required();
  sc_ablate->add_option("--axes", ab_axes, "axes to ablate, or 'all'");
  sc_ablate->add_option("--seed", ab_cfg.split.rng_seed, "split/model seed");
  sc_ablate->add_option("--train-fraction", ab_cfg.split.train_fraction, "train fraction");
  sc_ablate->add_option("--trees", ab_cfg.forest.n_trees, "forest size");

  // --- run ---
  auto* sc_run = app.add_subcommand("run", "full pipeline from a config file");
  std::string config_path, run_workspace;
  uint64_t run_seed = 0;
  bool run_seed_set = false;
  sc_run->add_option("--config", config_path, "pipeline config JSON");
  sc_run->add_option("--workspace", run_workspace, "override workspace directory");
  sc_run->add_option("--seed", run_seed, "override seed")->each([&](const std::string&) {
    run_seed_set = true;
  });

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sc_syngen) {
      auto streams = generate(gen);
      write_canonical_csv(streams, out_path);
      size_t n = 0;
      for (const auto& s : streams) n += s.events.size();
      std::cout << "wrote " << n << " events for " << streams.size() << " users to "
                << out_path << "\n";
    } else if (*sc_ingest) {
      IngestStats stats;
      auto records = parse_json_file(in_path, stats);
      auto streams = canonicalize(records, ingest_cfg, stats);
      write_canonical_csv(streams, ingest_out);
      std::cout << "parsed " << stats.parsed << " records (" << stats.skipped
                << " skipped), kept " << stats.users_kept << " users / "
                << stats.events_kept << " events\n";
    } else if (*sc_inject) {
      auto streams = read_canonical_csv(inject_in);
      auto report = inject(streams, inj_cfg);
      write_canonical_csv(streams, inject_out);
      write_intervals_json(report, intervals_out);
      std::cout << "injected " << report.intervals.size() << " incidents ("
                << report.injected_event_count << " events) into " << inject_out << "\n";
    } else if (*sc_feat) {
      auto streams = read_canonical_csv(feat_in);
      std::vector<HijackInterval> intervals;
      if (!feat_intervals.empty()) intervals = read_intervals_json(feat_intervals);
      auto ds = featurize(streams, intervals, feat_cfg);
      write_feature_csv(ds, feat_out);
      if (!feat_dict.empty()) write_feature_dictionary(ds, feat_cfg, feat_dict);
      size_t pos = 0;
      for (int l : ds.labels) pos += static_cast<size_t>(l == 1);
      std::cout << "wrote " << ds.n_rows << " windows (" << pos << " hijacked, "
                << ds.n_cols << " columns) to " << feat_out << "\n";
    } else if (*sc_train) {
      auto ds = read_feature_csv(train_features);
      std::vector<int> labels = train_labels.empty() ? ds.labels
                                                     : read_label_csv(train_labels);
      if (labels.size() != ds.n_rows)
        throw std::runtime_error("label count does not match feature rows");
      auto cols = ds.column_group(train_selector);
      Matrix m = matrix_for_columns(ds, cols);
      TrainedModel model;
      model.selector = train_selector;
      for (size_t c : cols) model.feature_names.push_back(ds.columns[c].name);
      model.standardizer.fit(m);
      model.forest.fit(model.standardizer.transform(m), labels, forest_cfg);
      save_model(model, model_out);
      std::cout << "trained " << forest_cfg.n_trees << " trees on " << ds.n_rows
                << " rows (" << cols.size() << " features), saved to " << model_out << "\n";
    } else if (*sc_eval) {
      auto ds = read_feature_csv(eval_features);
      if (!eval_labels.empty()) {
        auto labels = read_label_csv(eval_labels);
        if (labels.size() != ds.n_rows)
          throw std::runtime_error("label count does not match feature rows");
        ds.labels = labels;
      }
      EvalReport report;
      if (!eval_models.empty() && !eval_fresh) {
        // score pre-trained models on the whole input as a held-out set
        report.test_rows = ds.n_rows;
        for (int l : ds.labels) report.test_positives += static_cast<size_t>(l == 1);
        report.seed = eval_cfg.split.rng_seed;
        for (const auto& path : eval_models) {
          TrainedModel model = load_model(path);
          auto cols = ds.column_group(model.selector);
          Matrix m = matrix_for_columns(ds, cols);
          auto scores = model.forest.predict_proba(model.standardizer.transform(m));
          ModelResult res;
          res.name = fs::path(path).stem().string();
          res.roc_auc = roc_auc(scores, ds.labels);
          res.pr_auc = pr_auc(scores, ds.labels);
          res.f1 = f1_optimal(scores, ds.labels);
          res.roc_points = roc_curve(scores, ds.labels);
          res.pr_points = pr_curve(scores, ds.labels);
          report.models.push_back(std::move(res));
        }
      } else {
        eval_cfg.forest.rng_seed = eval_cfg.split.rng_seed;
        eval_cfg.isoforest.rng_seed = eval_cfg.split.rng_seed;
        eval_cfg.with_isolation_forest = !eval_no_iso;
        report = evaluate_models(ds, eval_cfg);
      }
      render_report(report, report_dir);
      std::cout << "report written to " << report_dir << "\n";
      for (const auto& m : report.models)
        std::cout << "  " << m.name << ": roc_auc=" << m.roc_auc << " pr_auc=" << m.pr_auc
                  << " f1=" << m.f1.f1 << "\n";
    } else if (*sc_ablate) {
      auto ds = read_feature_csv(ab_features);
      ab_cfg.forest.rng_seed = ab_cfg.split.rng_seed;
      std::vector<std::string> axes = ab_axes;
      if (axes.size() == 1 && axes[0] == "all") axes = all_axes();
      EvalReport report = evaluate_models(
          ds, [&] {
            EvalConfig c = ab_cfg;
            c.selectors = {"combined"};
            c.with_isolation_forest = false;
            return c;
          }());
      report.ablation = run_ablation(ds, ab_cfg, axes);
      render_report(report, ab_report_dir);
      std::cout << "ablation report written to " << ab_report_dir << "\n";
      for (const auto& row : report.ablation)
        std::cout << "  " << row.setting << (row.axis.empty() ? "" : " " + row.axis)
                  << ": roc_auc=" << row.roc_auc << " pr_auc=" << row.pr_auc
                  << " droc=" << row.delta_roc << "\n";
    } else if (*sc_run) {
      PipelineConfig config;
      if (!config_path.empty()) config = validate_config(config_path);
      if (!run_workspace.empty()) config.workspace = run_workspace;
      if (run_seed_set) {
        config.seed = run_seed;
        config.syngen.seed = run_seed;
        config.ingest.rng_seed = run_seed;
        config.inject.rng_seed = run_seed;
        config.eval.split.rng_seed = run_seed;
        config.eval.forest.rng_seed = run_seed;
        config.eval.isoforest.rng_seed = run_seed;
      }
      PipelineResult result = run_pipeline(config);
      std::cout << "pipeline complete; report in " << result.report_dir << "\n";
      for (const auto& m : result.report.models)
        std::cout << "  " << m.name << ": roc_auc=" << m.roc_auc << " pr_auc=" << m.pr_auc
                  << " f1=" << m.f1.f1 << "\n";
      if (result.featurize_events_per_sec > 0.0)
        std::cout << "  featurize rate: " << static_cast<long>(result.featurize_events_per_sec)
                  << " events/s\n";
    }
  } catch (const StageError& e) {
    std::cerr << "[" << e.stage << "] " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
