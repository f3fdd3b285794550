#include "ueba/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include <json.hpp>

#include "ueba/csv.hpp"
#include "ueba/model_io.hpp"
#include "ueba/rng.hpp"
#include "ueba/windowing.hpp"

namespace ueba {

namespace fs = std::filesystem;
using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

std::string hash_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot hash missing file: " + path);
  uint64_t h = 0xcbf29ce484222325ULL;
  char buf[65536];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    std::streamsize n = in.gcount();
    for (std::streamsize i = 0; i < n; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
  }
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(h));
  return hex;
}

namespace {

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& scope) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key()))
      throw std::runtime_error("unknown config key: " + scope + it.key());
  }
}

}  // namespace

PipelineConfig config_from_json_text(const std::string& text) {
  json j = json::parse(text);
  if (!j.is_object()) throw std::runtime_error("config root must be a JSON object");

  reject_unknown_keys(j, {"seed", "workspace", "input", "syngen", "ingest", "inject",
                          "features", "models", "eval"},
                      "");

  PipelineConfig c;
  if (j.contains("seed")) {
    c.seed = j.at("seed").get<uint64_t>();
  } else {
    std::cerr << "config: no seed given, defaulting to 42\n";
    c.seed = 42;
  }
  if (j.contains("workspace")) c.workspace = j.at("workspace").get<std::string>();
  if (j.contains("input")) c.input = j.at("input").get<std::string>();

  if (j.contains("syngen")) {
    const json& s = j.at("syngen");
    reject_unknown_keys(s, {"users", "days", "vocabulary_size", "rate_min", "rate_max"},
                        "syngen.");
    if (s.contains("users")) c.syngen.users = s.at("users").get<size_t>();
    if (s.contains("days")) c.syngen.days = s.at("days").get<size_t>();
    if (s.contains("vocabulary_size"))
      c.syngen.vocabulary_size = s.at("vocabulary_size").get<size_t>();
    if (s.contains("rate_min")) c.syngen.rate_min = s.at("rate_min").get<double>();
    if (s.contains("rate_max")) c.syngen.rate_max = s.at("rate_max").get<double>();
  }
  if (j.contains("ingest")) {
    const json& s = j.at("ingest");
    reject_unknown_keys(s, {"top_users", "deviation_prob"}, "ingest.");
    if (s.contains("top_users")) c.ingest.top_n_users = s.at("top_users").get<size_t>();
    if (s.contains("deviation_prob"))
      c.ingest.primary_ip_deviation_prob = s.at("deviation_prob").get<double>();
  }
  if (j.contains("inject")) {
    const json& s = j.at("inject");
    reject_unknown_keys(s,
                        {"max_incidents", "min_candidate_events", "hijack_duration_hours",
                         "prefail_min", "prefail_max", "burst_min", "burst_max",
                         "prefail_lead_minutes"},
                        "inject.");
    if (s.contains("max_incidents")) c.inject.max_incidents = s.at("max_incidents").get<size_t>();
    if (s.contains("min_candidate_events"))
      c.inject.min_candidate_events = s.at("min_candidate_events").get<size_t>();
    if (s.contains("hijack_duration_hours"))
      c.inject.hijack_duration = static_cast<int64_t>(
          s.at("hijack_duration_hours").get<double>() * 3600.0);
    if (s.contains("prefail_min")) c.inject.prefail_min = s.at("prefail_min").get<int>();
    if (s.contains("prefail_max")) c.inject.prefail_max = s.at("prefail_max").get<int>();
    if (s.contains("burst_min")) c.inject.burst_min = s.at("burst_min").get<size_t>();
    if (s.contains("burst_max")) c.inject.burst_max = s.at("burst_max").get<size_t>();
    if (s.contains("prefail_lead_minutes"))
      c.inject.prefail_lead = static_cast<int64_t>(
          s.at("prefail_lead_minutes").get<double>() * 60.0);
  }
  if (j.contains("features")) {
    const json& s = j.at("features");
    reject_unknown_keys(s,
                        {"window_size", "step", "rarity_threshold", "lookback",
                         "empty_history_sentinel", "parallel"},
                        "features.");
    if (s.contains("window_size")) c.features.window_size = s.at("window_size").get<size_t>();
    if (s.contains("step")) c.features.step = s.at("step").get<size_t>();
    if (s.contains("rarity_threshold"))
      c.features.rarity_threshold = s.at("rarity_threshold").get<double>();
    if (s.contains("lookback")) c.features.lookback = s.at("lookback").get<size_t>();
    if (s.contains("empty_history_sentinel"))
      c.features.empty_history_sentinel = s.at("empty_history_sentinel").get<double>();
    if (s.contains("parallel")) c.features.parallel = s.at("parallel").get<bool>();
  }
  if (j.contains("models")) {
    const json& s = j.at("models");
    reject_unknown_keys(s, {"n_trees", "isoforest_trees", "isoforest_subsample", "parallel"},
                        "models.");
    if (s.contains("n_trees")) c.eval.forest.n_trees = s.at("n_trees").get<size_t>();
    if (s.contains("isoforest_trees"))
      c.eval.isoforest.n_trees = s.at("isoforest_trees").get<size_t>();
    if (s.contains("isoforest_subsample"))
      c.eval.isoforest.subsample = s.at("isoforest_subsample").get<size_t>();
    if (s.contains("parallel")) c.eval.forest.parallel = s.at("parallel").get<bool>();
  }
  if (j.contains("eval")) {
    const json& s = j.at("eval");
    reject_unknown_keys(s,
                        {"train_fraction", "stratified", "selectors",
                         "with_isolation_forest", "ablation_axes"},
                        "eval.");
    if (s.contains("train_fraction"))
      c.eval.split.train_fraction = s.at("train_fraction").get<double>();
    if (s.contains("stratified")) c.eval.split.stratified = s.at("stratified").get<bool>();
    if (s.contains("selectors"))
      c.eval.selectors = s.at("selectors").get<std::vector<std::string>>();
    if (s.contains("with_isolation_forest"))
      c.eval.with_isolation_forest = s.at("with_isolation_forest").get<bool>();
    if (s.contains("ablation_axes"))
      c.ablation_axes = s.at("ablation_axes").get<std::vector<std::string>>();
  }

  // seed fan-out into every stage
  c.syngen.seed = c.seed;
  c.ingest.rng_seed = c.seed;
  c.inject.rng_seed = c.seed;
  c.eval.split.rng_seed = c.seed;
  c.eval.forest.rng_seed = c.seed;
  c.eval.isoforest.rng_seed = c.seed;
  return c;
}

PipelineConfig validate_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return config_from_json_text(text);
}

std::string config_to_json_text(const PipelineConfig& c) {
  ojson j;
  j["seed"] = c.seed;
  j["workspace"] = c.workspace;
  j["input"] = c.input;
  j["syngen"] = {{"users", c.syngen.users},
                 {"days", c.syngen.days},
                 {"vocabulary_size", c.syngen.vocabulary_size},
                 {"rate_min", c.syngen.rate_min},
                 {"rate_max", c.syngen.rate_max}};
  j["ingest"] = {{"top_users", c.ingest.top_n_users},
                 {"deviation_prob", c.ingest.primary_ip_deviation_prob}};
  j["inject"] = {{"max_incidents", c.inject.max_incidents},
                 {"min_candidate_events", c.inject.min_candidate_events},
                 {"hijack_duration_hours",
                  static_cast<double>(c.inject.hijack_duration) / 3600.0},
                 {"prefail_min", c.inject.prefail_min},
                 {"prefail_max", c.inject.prefail_max},
                 {"burst_min", c.inject.burst_min},
                 {"burst_max", c.inject.burst_max},
                 {"prefail_lead_minutes",
                  static_cast<double>(c.inject.prefail_lead) / 60.0}};
  j["features"] = {{"window_size", c.features.window_size},
                   {"step", c.features.step},
                   {"rarity_threshold", c.features.rarity_threshold},
                   {"lookback", c.features.lookback},
                   {"empty_history_sentinel", c.features.empty_history_sentinel},
                   {"parallel", c.features.parallel}};
  j["models"] = {{"n_trees", c.eval.forest.n_trees},
                 {"isoforest_trees", c.eval.isoforest.n_trees},
                 {"isoforest_subsample", c.eval.isoforest.subsample},
                 {"parallel", c.eval.forest.parallel}};
  j["eval"] = {{"train_fraction", c.eval.split.train_fraction},
               {"stratified", c.eval.split.stratified},
               {"selectors", c.eval.selectors},
               {"with_isolation_forest", c.eval.with_isolation_forest},
               {"ablation_axes", c.ablation_axes}};
  return j.dump(2) + "\n";
}

namespace {

// Stage manifest handling. `measured` holds timings and is ignored by the
// skip check, so reruns stay cache-friendly while still recording rates.
class StageRunner {
public:
  StageRunner(const fs::path& workspace, PipelineResult& result)
      : dir_(workspace / "manifests"), result_(result) {
    fs::create_directories(dir_);
  }

  bool up_to_date(const std::string& stage, const ojson& params,
                  const std::vector<std::string>& inputs,
                  const std::vector<std::string>& outputs) const {
    fs::path mf = dir_ / (stage + ".json");
    std::ifstream in(mf, std::ios::binary);
    if (!in) return false;
    json old = json::parse(in, nullptr, false);
    if (old.is_discarded()) return false;
    if (!old.contains("params") || old.at("params") != json(params)) return false;
    for (const auto& p : inputs) {
      if (!fs::exists(p)) return false;
      if (!old.contains("inputs") || !old.at("inputs").contains(p)) return false;
      if (old.at("inputs").at(p).get<std::string>() != hash_file(p)) return false;
    }
    for (const auto& p : outputs) {
      if (!fs::exists(p)) return false;
      if (!old.contains("outputs") || !old.at("outputs").contains(p)) return false;
      if (old.at("outputs").at(p).get<std::string>() != hash_file(p)) return false;
    }
    return true;
  }

  void record(const std::string& stage, const ojson& params,
              const std::vector<std::string>& inputs, const std::vector<std::string>& outputs,
              const ojson& measured = ojson::object()) {
    ojson m;
    m["stage"] = stage;
    m["params"] = params;
    m["inputs"] = ojson::object();
    for (const auto& p : inputs) m["inputs"][p] = hash_file(p);
    m["outputs"] = ojson::object();
    for (const auto& p : outputs) m["outputs"][p] = hash_file(p);
    m["measured"] = measured;
    std::ofstream out(dir_ / (stage + ".json"), std::ios::binary);
    out << m.dump(2) << "\n";
  }

  // Runs `fn` unless the manifest proves the outputs current.
  template <typename Fn>
  void stage(const std::string& name, const ojson& params,
             const std::vector<std::string>& inputs, const std::vector<std::string>& outputs,
             Fn&& fn) {
    if (up_to_date(name, params, inputs, outputs)) {
      result_.stages_skipped.push_back(name);
      std::cerr << "[" << name << "] up to date, skipping\n";
      return;
    }
    try {
      ojson measured = fn();
      record(name, params, inputs, outputs, measured);
      result_.stages_run.push_back(name);
    } catch (const StageError&) {
      throw;
    } catch (const std::exception& e) {
      throw StageError(name, e.what());
    }
  }

private:
  fs::path dir_;
  PipelineResult& result_;
};

bool looks_like_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::string first;
  std::getline(in, first);
  return first.rfind("user_id,", 0) == 0;
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& config) {
  fs::path ws(config.workspace);
  fs::create_directories(ws);

  PipelineResult result;
  StageRunner runner(ws, result);

  // echo the effective config next to the manifests
  {
    std::ofstream out(ws / "manifests" / "config.json", std::ios::binary);
    out << config_to_json_text(config);
  }

  std::string canonical = (ws / "canonical.csv").string();
  std::string injected = (ws / "injected.csv").string();
  std::string intervals_path = (ws / "intervals.json").string();
  std::string features_path = (ws / "features.csv").string();
  std::string dict_path = (ws / "features_dict.json").string();
  std::string model_path = (ws / "model.bin").string();
  std::string report_dir = ws.string();

  // --- source: synthetic generation or ingestion of a provided log ---
  if (config.input.empty()) {
    ojson params = {{"users", config.syngen.users},
                    {"days", config.syngen.days},
                    {"vocabulary_size", config.syngen.vocabulary_size},
                    {"rate_min", config.syngen.rate_min},
                    {"rate_max", config.syngen.rate_max},
                    {"seed", config.seed}};
    runner.stage("syngen", params, {}, {canonical}, [&]() {
      auto streams = generate(config.syngen);
      write_canonical_csv(streams, canonical);
      size_t n = 0;
      for (const auto& s : streams) n += s.events.size();
      return ojson{{"events", n}, {"users", streams.size()}};
    });
  } else {
    ojson params = {{"top_users", config.ingest.top_n_users},
                    {"deviation_prob", config.ingest.primary_ip_deviation_prob},
                    {"seed", config.seed}};
    runner.stage("ingest", params, {config.input}, {canonical}, [&]() {
      IngestStats stats;
      std::vector<UserStream> streams;
      if (looks_like_csv(config.input)) {
        streams = read_canonical_csv(config.input);
        if (config.ingest.top_n_users > 0 && streams.size() > config.ingest.top_n_users) {
          std::sort(streams.begin(), streams.end(), [](const auto& a, const auto& b) {
            if (a.events.size() != b.events.size()) return a.events.size() > b.events.size();
            return a.user_id < b.user_id;
          });
          streams.resize(config.ingest.top_n_users);
          std::sort(streams.begin(), streams.end(),
                    [](const auto& a, const auto& b) { return a.user_id < b.user_id; });
        }
      } else {
        auto records = parse_json_file(config.input, stats);
        streams = canonicalize(records, config.ingest, stats);
      }
      write_canonical_csv(streams, canonical);
      return ojson{{"parsed", stats.parsed},
                   {"skipped", stats.skipped},
                   {"users_kept", streams.size()}};
    });
  }

  // --- inject ---
  {
    ojson params = {{"max_incidents", config.inject.max_incidents},
                    {"min_candidate_events", config.inject.min_candidate_events},
                    {"hijack_duration", config.inject.hijack_duration},
                    {"prefail_min", config.inject.prefail_min},
                    {"prefail_max", config.inject.prefail_max},
                    {"burst_min", config.inject.burst_min},
                    {"burst_max", config.inject.burst_max},
                    {"prefail_lead", config.inject.prefail_lead},
                    {"seed", config.seed}};
    runner.stage("inject", params, {canonical}, {injected, intervals_path}, [&]() {
      auto streams = read_canonical_csv(canonical);
      auto report = inject(streams, config.inject);
      write_canonical_csv(streams, injected);
      write_intervals_json(report, intervals_path);
      return ojson{{"incidents", report.intervals.size()},
                   {"injected_events", report.injected_event_count}};
    });
  }

  // --- featurize ---
  {
    ojson params = {{"window_size", config.features.window_size},
                    {"step", config.features.step},
                    {"rarity_threshold", config.features.rarity_threshold},
                    {"lookback", config.features.lookback},
                    {"empty_history_sentinel", config.features.empty_history_sentinel}};
    runner.stage("featurize", params, {injected, intervals_path},
                 {features_path, dict_path}, [&]() {
                   auto streams = read_canonical_csv(injected);
                   auto intervals = read_intervals_json(intervals_path);
                   size_t n_events = 0;
                   for (const auto& s : streams) n_events += s.events.size();

                   auto t0 = std::chrono::steady_clock::now();
                   auto ds = featurize(streams, intervals, config.features);
                   auto t1 = std::chrono::steady_clock::now();
                   double secs = std::chrono::duration<double>(t1 - t0).count();
                   double rate = secs > 0.0 ? static_cast<double>(n_events) / secs : 0.0;
                   result.featurize_events_per_sec = rate;

                   write_feature_csv(ds, features_path);
                   write_feature_dictionary(ds, config.features, dict_path);

                   size_t positives = 0;
                   for (int l : ds.labels) positives += static_cast<size_t>(l == 1);
                   return ojson{{"windows", ds.n_rows},
                                {"positives", positives},
                                {"events", n_events},
                                {"events_per_sec", rate}};
                 });
  }

  // --- evaluate (+ optional ablation), model saved for reuse ---
  {
    ojson params = {{"train_fraction", config.eval.split.train_fraction},
                    {"stratified", config.eval.split.stratified},
                    {"selectors", config.eval.selectors},
                    {"with_isolation_forest", config.eval.with_isolation_forest},
                    {"n_trees", config.eval.forest.n_trees},
                    {"ablation_axes", config.ablation_axes},
                    {"seed", config.seed}};
    std::vector<std::string> outputs = {(ws / "report.json").string(),
                                        (ws / "report.md").string(), model_path};
    runner.stage("evaluate", params, {features_path}, outputs, [&]() {
      auto ds = read_feature_csv(features_path);
      EvalReport report = evaluate_models(ds, config.eval);
      if (!config.ablation_axes.empty()) {
        std::vector<std::string> axes = config.ablation_axes;
        if (axes.size() == 1 && axes[0] == "all") axes = all_axes();
        report.ablation = run_ablation(ds, config.eval, axes);
      }
      render_report(report, report_dir);
      result.report = report;

      // persist the combined-feature forest for standalone scoring
      Split split = stratified_split(ds.labels, config.eval.split);
      auto cols = ds.column_group("combined");
      Matrix all(ds.n_rows, cols.size());
      for (size_t r = 0; r < ds.n_rows; ++r)
        for (size_t jc = 0; jc < cols.size(); ++jc) all.at(r, jc) = ds.at(r, cols[jc]);
      Matrix train = all.select_rows(split.train);
      std::vector<int> y_train = select_values(ds.labels, split.train);
      TrainedModel model;
      model.selector = "combined";
      for (size_t c : cols) model.feature_names.push_back(ds.columns[c].name);
      model.standardizer.fit(train);
      model.forest.fit(model.standardizer.transform(train), y_train, config.eval.forest);
      save_model(model, model_path);
      return ojson{{"models", report.models.size()},
                   {"ablation_rows", report.ablation.size()}};
    });
  }

  result.report_dir = report_dir;
  // when the evaluate stage was skipped, reload the report from disk
  if (result.report.models.empty()) {
    std::ifstream in(ws / "report.json", std::ios::binary);
    if (in) {
      std::string text((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
      result.report = report_from_json(text);
    }
  }
  return result;
}

}  // namespace ueba
