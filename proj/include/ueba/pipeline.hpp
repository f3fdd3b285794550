#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ueba/eval.hpp"
#include "ueba/features.hpp"
#include "ueba/ingest.hpp"
#include "ueba/inject.hpp"
#include "ueba/syngen.hpp"

namespace ueba {

// End-to-end orchestration. A pipeline run is a pure function of the input
// files' content hashes, the effective config, and the seed; each stage
// writes a manifest (params + input/output hashes) under
// <workspace>/manifests/ and is skipped on rerun when nothing changed.

struct PipelineConfig {
  uint64_t seed = 42;
  std::string workspace = "workspace";
  std::string input;  // raw JSON log or canonical CSV; empty = synthetic corpus

  GeneratorConfig syngen;
  IngestConfig ingest;
  InjectionConfig inject;
  FeaturizeConfig features;
  EvalConfig eval;
  std::vector<std::string> ablation_axes;  // empty = no ablation stage
};

struct StageError : std::runtime_error {
  std::string stage;
  StageError(std::string stage_name, const std::string& message)
      : std::runtime_error(message), stage(std::move(stage_name)) {}
};

// Parses and validates a JSON config file: unknown keys are rejected by name,
// missing fields take documented defaults (a missing seed warns), and the
// effective config is echoed into the workspace manifest directory on run.
PipelineConfig validate_config(const std::string& path);
PipelineConfig config_from_json_text(const std::string& text);
std::string config_to_json_text(const PipelineConfig& config);

struct PipelineResult {
  std::string report_dir;
  EvalReport report;
  double featurize_events_per_sec = 0.0;
  std::vector<std::string> stages_run;
  std::vector<std::string> stages_skipped;
};

PipelineResult run_pipeline(const PipelineConfig& config);

// FNV-1a over file bytes, hex-encoded; the manifest content hash.
std::string hash_file(const std::string& path);

}  // namespace ueba
