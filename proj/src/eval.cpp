#include "ueba/eval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include "ueba/rng.hpp"
#include "ueba/standardizer.hpp"

namespace ueba {

namespace fs = std::filesystem;

const std::vector<std::string>& all_axes() {
  static const std::vector<std::string> axes = {"adalah",   "dabt",     "isnad",
                                                "reputation", "anomaly",  "t_adalah",
                                                "t_dabt",   "t_isnad",  "t_reputation"};
  return axes;
}

Split stratified_split(const std::vector<int>& labels, const SplitSpec& spec) {
  size_t n = labels.size();
  if (n == 0) throw std::invalid_argument("cannot split an empty dataset");
  if (spec.train_fraction <= 0.0 || spec.train_fraction >= 1.0)
    throw std::invalid_argument("train fraction must be in (0,1)");

  size_t n_train = static_cast<size_t>(std::floor(spec.train_fraction * static_cast<double>(n)));
  Rng rng = Rng::stream(spec.rng_seed, "split");
  Split split;

  if (!spec.stratified) {
    auto perm = rng.permutation(n);
    split.train.assign(perm.begin(), perm.begin() + static_cast<long>(n_train));
    split.test.assign(perm.begin() + static_cast<long>(n_train), perm.end());
  } else {
    std::vector<size_t> pos, neg;
    for (size_t i = 0; i < n; ++i) (labels[i] == 1 ? pos : neg).push_back(i);
    if (pos.empty() || neg.empty())
      throw std::invalid_argument("stratified split needs both classes");

    // largest-remainder apportionment of the train budget across classes
    double exact_pos = static_cast<double>(n_train) * static_cast<double>(pos.size()) /
                       static_cast<double>(n);
    size_t train_pos = static_cast<size_t>(std::floor(exact_pos));
    double exact_neg = static_cast<double>(n_train) * static_cast<double>(neg.size()) /
                       static_cast<double>(n);
    size_t train_neg = static_cast<size_t>(std::floor(exact_neg));
    while (train_pos + train_neg < n_train) {
      if (exact_pos - std::floor(exact_pos) >= exact_neg - std::floor(exact_neg))
        ++train_pos;
      else
        ++train_neg;
    }
    train_pos = std::min(train_pos, pos.size() - 1);  // keep both classes in test
    train_neg = std::min(train_neg, neg.size() - 1);
    train_pos = std::max<size_t>(train_pos, 1);
    train_neg = std::max<size_t>(train_neg, 1);

    auto assign = [&](const std::vector<size_t>& cls, size_t take) {
      auto perm = rng.permutation(cls.size());
      for (size_t i = 0; i < cls.size(); ++i) {
        if (i < take)
          split.train.push_back(cls[perm[i]]);
        else
          split.test.push_back(cls[perm[i]]);
      }
    };
    assign(pos, train_pos);
    assign(neg, train_neg);
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

namespace {

Matrix dataset_matrix(const FeatureDataset& ds, const std::vector<size_t>& columns) {
  Matrix m(ds.n_rows, columns.size());
  for (size_t r = 0; r < ds.n_rows; ++r)
    for (size_t j = 0; j < columns.size(); ++j) m.at(r, j) = ds.at(r, columns[j]);
  return m;
}

void fill_metrics(ModelResult& res, const std::vector<double>& scores,
                  const std::vector<int>& labels) {
  res.roc_auc = roc_auc(scores, labels);
  res.pr_auc = pr_auc(scores, labels);
  res.f1 = f1_optimal(scores, labels);
  res.roc_points = roc_curve(scores, labels);
  res.pr_points = pr_curve(scores, labels);
}

}  // namespace

ModelResult evaluate_forest(const FeatureDataset& ds, const std::vector<size_t>& columns,
                            const Split& split, const ForestConfig& config,
                            const std::string& name) {
  Matrix all = dataset_matrix(ds, columns);
  Matrix train = all.select_rows(split.train);
  Matrix test = all.select_rows(split.test);
  std::vector<int> y_train = select_values(ds.labels, split.train);
  std::vector<int> y_test = select_values(ds.labels, split.test);

  Standardizer sc;
  sc.fit(train);
  Matrix train_s = sc.transform(train);
  Matrix test_s = sc.transform(test);

  RandomForest forest;
  forest.fit(train_s, y_train, config);
  std::vector<double> scores = forest.predict_proba(test_s);

  ModelResult res;
  res.name = name;
  fill_metrics(res, scores, y_test);

  const auto& imp = forest.feature_importances();
  std::map<std::string, double> by_axis;
  for (size_t j = 0; j < columns.size(); ++j) {
    const FeatureInfo& info = ds.columns[columns[j]];
    res.importances.emplace_back(info.name, imp[j]);
    by_axis[info.axis] += imp[j];
  }
  for (const auto& [axis, v] : by_axis) res.axis_importances.emplace_back(axis, v);
  return res;
}

EvalReport evaluate_models(const FeatureDataset& ds, const EvalConfig& config) {
  EvalReport report;
  report.seed = config.split.rng_seed;

  Split split = stratified_split(ds.labels, config.split);
  report.train_rows = split.train.size();
  report.test_rows = split.test.size();
  for (size_t i : split.train) report.train_positives += static_cast<size_t>(ds.labels[i] == 1);
  for (size_t i : split.test) report.test_positives += static_cast<size_t>(ds.labels[i] == 1);

  for (const auto& sel : config.selectors) {
    auto cols = ds.column_group(sel);
    report.models.push_back(evaluate_forest(ds, cols, split, config.forest, sel + "_rf"));
  }

  if (config.with_isolation_forest) {
    auto cols = ds.column_group(config.isoforest_selector);
    Matrix all = dataset_matrix(ds, cols);
    Matrix train = all.select_rows(split.train);
    Matrix test = all.select_rows(split.test);
    std::vector<int> y_train = select_values(ds.labels, split.train);
    std::vector<int> y_test = select_values(ds.labels, split.test);

    Standardizer sc;
    sc.fit(train);

    IsoForestConfig iso = config.isoforest;
    double pos = 0.0;
    for (int l : y_train) pos += (l == 1);
    iso.contamination = std::clamp(pos / static_cast<double>(y_train.size()), 1e-6, 0.5);

    IsolationForest model;
    model.fit(sc.transform(train), iso);
    std::vector<double> scores = model.score(sc.transform(test));

    ModelResult res;
    res.name = "isolation_forest";
    fill_metrics(res, scores, y_test);
    report.models.push_back(std::move(res));
  }
  return report;
}

std::vector<AblationRow> run_ablation(const FeatureDataset& ds, const EvalConfig& config,
                                      const std::vector<std::string>& axes) {
  Split split = stratified_split(ds.labels, config.split);
  auto combined = ds.column_group("combined");

  std::vector<AblationRow> grid;
  ModelResult full = evaluate_forest(ds, combined, split, config.forest, "full");
  grid.push_back({"full", "", combined.size(), full.roc_auc, full.pr_auc, full.f1.f1, 0.0});

  for (const auto& axis : axes) {
    auto axis_cols = ds.column_group(axis);

    std::vector<size_t> removed;
    for (size_t c : combined)
      if (std::find(axis_cols.begin(), axis_cols.end(), c) == axis_cols.end())
        removed.push_back(c);
    ModelResult r = evaluate_forest(ds, removed, split, config.forest, "remove_" + axis);
    grid.push_back({"remove", axis, removed.size(), r.roc_auc, r.pr_auc, r.f1.f1,
                    r.roc_auc - full.roc_auc});

    ModelResult o = evaluate_forest(ds, axis_cols, split, config.forest, "only_" + axis);
    grid.push_back({"only", axis, axis_cols.size(), o.roc_auc, o.pr_auc, o.f1.f1,
                    o.roc_auc - full.roc_auc});
  }
  return grid;
}

namespace {

nlohmann::ordered_json points_json(const std::vector<std::pair<double, double>>& pts) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& [a, b] : pts) arr.push_back({a, b});
  return arr;
}

std::vector<std::pair<double, double>> points_from_json(const nlohmann::json& arr) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& p : arr) pts.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
  return pts;
}

nlohmann::ordered_json pairs_json(const std::vector<std::pair<std::string, double>>& v) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& [k, x] : v) arr.push_back({{"name", k}, {"value", x}});
  return arr;
}

std::vector<std::pair<std::string, double>> pairs_from_json(const nlohmann::json& arr) {
  std::vector<std::pair<std::string, double>> v;
  for (const auto& e : arr)
    v.emplace_back(e.at("name").get<std::string>(), e.at("value").get<double>());
  return v;
}

}  // namespace

std::string report_to_json(const EvalReport& report) {
  nlohmann::ordered_json j;
  j["train_rows"] = report.train_rows;
  j["test_rows"] = report.test_rows;
  j["train_positives"] = report.train_positives;
  j["test_positives"] = report.test_positives;
  j["seed"] = report.seed;
  j["models"] = nlohmann::ordered_json::array();
  for (const auto& m : report.models) {
    nlohmann::ordered_json e;
    e["name"] = m.name;
    e["roc_auc"] = m.roc_auc;
    e["pr_auc"] = m.pr_auc;
    e["f1_opt"] = m.f1.f1;
    e["precision_at_opt"] = m.f1.precision;
    e["recall_at_opt"] = m.f1.recall;
    e["threshold_opt"] = m.f1.threshold;
    e["roc_curve"] = points_json(m.roc_points);
    e["pr_curve"] = points_json(m.pr_points);
    e["importances"] = pairs_json(m.importances);
    e["axis_importances"] = pairs_json(m.axis_importances);
    j["models"].push_back(e);
  }
  j["ablation"] = nlohmann::ordered_json::array();
  for (const auto& row : report.ablation) {
    nlohmann::ordered_json e;
    e["setting"] = row.setting;
    e["axis"] = row.axis;
    e["n_features"] = row.n_features;
    e["roc_auc"] = row.roc_auc;
    e["pr_auc"] = row.pr_auc;
    e["f1"] = row.f1;
    e["delta_roc"] = row.delta_roc;
    j["ablation"].push_back(e);
  }
  return j.dump(2) + "\n";
}

EvalReport report_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  EvalReport r;
  r.train_rows = j.at("train_rows").get<size_t>();
  r.test_rows = j.at("test_rows").get<size_t>();
  r.train_positives = j.at("train_positives").get<size_t>();
  r.test_positives = j.at("test_positives").get<size_t>();
  r.seed = j.at("seed").get<uint64_t>();
  for (const auto& e : j.at("models")) {
    ModelResult m;
    m.name = e.at("name").get<std::string>();
    m.roc_auc = e.at("roc_auc").get<double>();
    m.pr_auc = e.at("pr_auc").get<double>();
    m.f1.f1 = e.at("f1_opt").get<double>();
    m.f1.precision = e.at("precision_at_opt").get<double>();
    m.f1.recall = e.at("recall_at_opt").get<double>();
    m.f1.threshold = e.at("threshold_opt").get<double>();
    m.roc_points = points_from_json(e.at("roc_curve"));
    m.pr_points = points_from_json(e.at("pr_curve"));
    m.importances = pairs_from_json(e.at("importances"));
    m.axis_importances = pairs_from_json(e.at("axis_importances"));
    r.models.push_back(std::move(m));
  }
  for (const auto& e : j.at("ablation")) {
    AblationRow row;
    row.setting = e.at("setting").get<std::string>();
    row.axis = e.at("axis").get<std::string>();
    row.n_features = e.at("n_features").get<size_t>();
    row.roc_auc = e.at("roc_auc").get<double>();
    row.pr_auc = e.at("pr_auc").get<double>();
    row.f1 = e.at("f1").get<double>();
    row.delta_roc = e.at("delta_roc").get<double>();
    r.ablation.push_back(std::move(row));
  }
  return r;
}

namespace {

std::string fmt(double v, int digits = 5) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + p.string());
  out << text;
}

}  // namespace

void render_report(const EvalReport& report, const std::string& dir) {
  if (report.models.empty()) throw std::invalid_argument("report has no models");
  fs::create_directories(dir);
  write_file(fs::path(dir) / "report.json", report_to_json(report));

  std::string md;
  md += "# Detection report\n\n";
  md += "Split: " + std::to_string(report.train_rows) + " train (" +
        std::to_string(report.train_positives) + " positive), " +
        std::to_string(report.test_rows) + " test (" +
        std::to_string(report.test_positives) + " positive), seed " +
        std::to_string(report.seed) + ".\n\n";
  md += "## Model comparison\n\n";
  md += "| Model | ROC-AUC | PR-AUC | F1 | Prec. / Rec. |\n";
  md += "|---|---|---|---|---|\n";
  for (const auto& m : report.models) {
    md += "| " + m.name + " | " + fmt(m.roc_auc) + " | " + fmt(m.pr_auc) + " | " +
          fmt(m.f1.f1, 4) + " | " + fmt(m.f1.precision, 3) + " / " + fmt(m.f1.recall, 3) +
          " |\n";
  }
  md += "\n";

  for (const auto& m : report.models) {
    if (m.axis_importances.empty()) continue;
    md += "## Axis importance: " + m.name + "\n\n";
    md += "| Axis | Share |\n|---|---|\n";
    for (const auto& [axis, v] : m.axis_importances)
      md += "| " + axis + " | " + fmt(v, 4) + " |\n";
    md += "\n";
  }

  if (!report.ablation.empty()) {
    md += "## Ablation\n\n";
    md += "| Setting | Axis | #Feat. | ROC-AUC | PR-AUC | F1 | dROC |\n";
    md += "|---|---|---|---|---|---|---|\n";
    for (const auto& row : report.ablation) {
      md += "| " + row.setting + " | " + (row.axis.empty() ? "-" : row.axis) + " | " +
            std::to_string(row.n_features) + " | " + fmt(row.roc_auc) + " | " +
            fmt(row.pr_auc) + " | " + fmt(row.f1, 4) + " | " + fmt(row.delta_roc) + " |\n";
    }
    md += "\n";
  }
  write_file(fs::path(dir) / "report.md", md);

  for (const auto& m : report.models) {
    std::string roc = "fpr,tpr\n";
    for (const auto& [a, b] : m.roc_points) roc += fmt(a, 6) + "," + fmt(b, 6) + "\n";
    write_file(fs::path(dir) / ("roc_" + m.name + ".csv"), roc);
    std::string pr = "recall,precision\n";
    for (const auto& [a, b] : m.pr_points) pr += fmt(a, 6) + "," + fmt(b, 6) + "\n";
    write_file(fs::path(dir) / ("pr_" + m.name + ".csv"), pr);
  }
}

}  // namespace ueba
