#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ueba/features.hpp"
#include "ueba/forest.hpp"
#include "ueba/isoforest.hpp"
#include "ueba/matrix.hpp"
#include "ueba/metrics.hpp"

namespace ueba {

struct SplitSpec {
  double train_fraction = 0.70;
  bool stratified = true;
  uint64_t rng_seed = 42;
};

struct Split {
  std::vector<size_t> train;  // ascending row indices
  std::vector<size_t> test;
};

// Disjoint, exhaustive split; under stratification each split's class counts
// follow largest-remainder apportionment, so per-split ratios stay within one
// sample of the global ratio.
Split stratified_split(const std::vector<int>& labels, const SplitSpec& spec);

struct ModelResult {
  std::string name;
  double roc_auc = 0.0;
  double pr_auc = 0.0;
  F1Point f1;
  std::vector<std::pair<double, double>> roc_points;  // (fpr, tpr)
  std::vector<std::pair<double, double>> pr_points;   // (recall, precision)
  std::vector<std::pair<std::string, double>> importances;       // per feature
  std::vector<std::pair<std::string, double>> axis_importances;  // per axis

  bool operator==(const ModelResult&) const = default;
};

struct AblationRow {
  std::string setting;  // "full", "remove", "only"
  std::string axis;
  size_t n_features = 0;
  double roc_auc = 0.0;
  double pr_auc = 0.0;
  double f1 = 0.0;
  double delta_roc = 0.0;  // vs the full model

  bool operator==(const AblationRow&) const = default;
};

struct EvalReport {
  std::vector<ModelResult> models;
  std::vector<AblationRow> ablation;
  size_t train_rows = 0;
  size_t test_rows = 0;
  size_t train_positives = 0;
  size_t test_positives = 0;
  uint64_t seed = 0;

  bool operator==(const EvalReport&) const = default;
};

struct EvalConfig {
  SplitSpec split;
  ForestConfig forest;
  IsoForestConfig isoforest;
  std::vector<std::string> selectors = {"hadith", "combined", "temporal", "raw_counts"};
  bool with_isolation_forest = true;
  std::string isoforest_selector = "hadith";
};

// Trains and scores one Random Forest on the selected columns against a fixed
// split. Used by both the model comparison and the ablation grid.
ModelResult evaluate_forest(const FeatureDataset& ds, const std::vector<size_t>& columns,
                            const Split& split, const ForestConfig& config,
                            const std::string& name);

// Full comparison: one RF per feature selector plus the unsupervised
// isolation-forest baseline, all sharing the same split.
EvalReport evaluate_models(const FeatureDataset& ds, const EvalConfig& config);

// Remove-axis / only-axis grid over the 9 trust axes plus the full model row,
// everything on one shared split and seed.
std::vector<AblationRow> run_ablation(const FeatureDataset& ds, const EvalConfig& config,
                                      const std::vector<std::string>& axes);

// report.json + report.md + roc_<model>.csv / pr_<model>.csv. Rendering is a
// pure function of the report; repeated renders are byte-identical.
void render_report(const EvalReport& report, const std::string& dir);

std::string report_to_json(const EvalReport& report);
EvalReport report_from_json(const std::string& text);

const std::vector<std::string>& all_axes();

}  // namespace ueba
