#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <vector>

#include "ueba/event.hpp"
#include "ueba/history.hpp"

namespace ueba {

constexpr size_t kStaticFeatureCount = 26;
constexpr size_t kTemporalFeatureCount = 16;
constexpr size_t kTrustFeatureCount = kStaticFeatureCount + kTemporalFeatureCount;

struct FeaturizeConfig {
  size_t window_size = 50;
  size_t step = 25;

  double empty_history_sentinel = 5.0;  // anomaly axis when no history exists
  double rarity_threshold = 0.01;       // transition prob below this is "rare"
  size_t lookback = 5;                  // window summaries kept per user

  // suspicious-window indicator thresholds
  double suspicious_fail_delta = 0.1;
  double suspicious_new_ip_rate = 0.5;
  double suspicious_out_of_hours = 0.5;

  bool parallel = false;  // OpenMP over users; output identical to serial
};

// Column metadata: axis is one of adalah, dabt, isnad, reputation, anomaly,
// t_adalah, t_dabt, t_isnad, t_reputation for the 42 trust features, or
// "raw" for raw event-type counts. index is the 1-based position within the
// 42-feature trust vector (0 for raw columns).
struct FeatureInfo {
  std::string name;
  std::string axis;
  int index = 0;
};

const std::vector<FeatureInfo>& trust_feature_info();

// Per-window digest shared by static and temporal computation.
struct WindowStats {
  size_t size = 0;
  int64_t start_time = 0;
  int64_t end_time = 0;
  std::map<std::string, double> type_counts;
  std::vector<double> hour_counts = std::vector<double>(24, 0.0);
  std::vector<double> weekday_counts = std::vector<double>(7, 0.0);
  std::map<std::string, double> subnet_counts;
  std::map<std::string, double> trans_counts;  // joint over consecutive pairs
  std::map<std::string, double> ngram_counts;  // trigrams
  std::vector<std::pair<std::string, std::string>> transitions;  // in order
  std::vector<std::string> distinct_paths;
  std::vector<std::string> distinct_ips;
  size_t novel_paths = 0;  // distinct paths absent from history
  size_t new_ips = 0;      // distinct IPs absent from history
  size_t login_attempts = 0;
  size_t login_successes = 0;
  size_t login_failures = 0;
  size_t sensitive_events = 0;
  size_t primary_ip_matches = 0;
  size_t primary_subnet_matches = 0;
  size_t geo_impossible_pairs = 0;
  size_t long_gaps = 0;   // inter-event gaps > 1 hour
  size_t ip_changes = 0;  // adjacent events on different (non-empty) IPs
  size_t max_minute_count = 0;
  size_t max_run_length = 0;
  double mean_gap = 0.0;
  double timing_entropy = 0.0;
  std::string dominant_subnet;
  double duration() const { return static_cast<double>(end_time - start_time); }
  double rate() const;
  double fail_rate() const;
};

WindowStats summarize_window(const Event* events, size_t count,
                             const UserHistoryAccumulator& history);

// The 26 history-vs-window features. The accumulator must be frozen at the
// window's start time.
std::array<double, kStaticFeatureCount> static_features(
    const UserHistoryAccumulator& history, const WindowStats& win,
    const FeaturizeConfig& config);

// Rolling per-user state consumed by the temporal features. Windows must be
// visited in increasing seq_index order; regressions throw.
class WindowSequenceState {
public:
  explicit WindowSequenceState(const FeaturizeConfig& config) : config_(config) {}

  // Computes the 16 temporal features for this window, then absorbs it.
  // `stat` = the window's static features (risk scoring reads the anomaly
  // block). A user's first window yields fixed neutral defaults for every
  // feature except cumulative_suspicious, which starts counting immediately.
  std::array<double, kTemporalFeatureCount> advance(
      const WindowSlice& window, const WindowStats& win,
      const std::array<double, kStaticFeatureCount>& stat,
      const UserHistoryAccumulator& history);

private:
  struct Summary {
    std::map<std::string, double> type_counts;
    double mean_gap = 0.0;
    double rate = 0.0;
    double fail_rate = 0.0;
    std::string dominant_subnet;
  };

  FeaturizeConfig config_;
  std::deque<Summary> buffer_;
  std::deque<double> risks_;
  std::deque<double> rates_;
  size_t cumulative_suspicious_ = 0;
  size_t windows_seen_ = 0;
  size_t last_seq_index_ = 0;
  std::array<double, 4> anomaly_min_{};
  std::array<double, 4> anomaly_max_{};
};

// Raw event-type count baseline. If the vocabulary was built with a reserved
// bucket, types outside it are counted there; otherwise they are dropped.
struct Vocabulary {
  std::vector<std::string> types;  // sorted; reserved bucket last if present
  bool has_other = false;
  size_t size() const { return types.size(); }
};

Vocabulary build_vocabulary(const std::vector<UserStream>& streams, bool reserve_other = false);

std::vector<double> raw_count_features(const Event* events, size_t count,
                                       const Vocabulary& vocab);

// The assembled dataset: one row per labeled window, columns = 42 trust
// features followed by raw counts. Every value is finite.
struct FeatureDataset {
  std::vector<WindowSlice> windows;
  std::vector<FeatureInfo> columns;
  std::vector<std::string> vocabulary;
  size_t n_rows = 0;
  size_t n_cols = 0;
  std::vector<double> values;  // row-major
  std::vector<int> labels;

  double at(size_t row, size_t col) const { return values[row * n_cols + col]; }

  // Column indices for a named feature group: hadith (26 static), temporal
  // (16), combined (42), raw_counts, or one axis tag.
  std::vector<size_t> column_group(const std::string& selector) const;
};

FeatureDataset featurize(const std::vector<UserStream>& streams,
                         const std::vector<HijackInterval>& intervals,
                         const FeaturizeConfig& config);

void write_feature_csv(const FeatureDataset& ds, const std::string& path);
FeatureDataset read_feature_csv(const std::string& path);
void write_feature_dictionary(const FeatureDataset& ds, const FeaturizeConfig& config,
                              const std::string& path);

}  // namespace ueba
