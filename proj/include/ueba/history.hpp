#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

#include "ueba/event.hpp"

namespace ueba {

// Incremental per-user statistics over all events *strictly before* a window
// start. The featurizer absorbs events in stream order and reads the
// accumulator as a frozen snapshot between updates; nothing at or after the
// window's start time may ever be absorbed before that window is featurized
// (the leakage boundary every feature depends on).
//
// Every update is O(1) amortized: counters, histograms and hash sets, plus
// prefix counts of authentication outcomes so the early/late history split
// can be evaluated at any point without rescanning.
class UserHistoryAccumulator {
public:
  void update(const Event& e);

  bool empty() const { return total_events_ == 0; }
  size_t total_events() const { return total_events_; }
  int64_t first_time() const { return first_time_; }
  int64_t last_time() const { return last_time_; }

  size_t active_days() const { return day_counts_.size(); }
  const std::map<int64_t, double>& day_counts() const { return day_counts_; }
  const std::vector<double>& hour_histogram() const { return hour_hist_; }
  const std::vector<double>& weekday_histogram() const { return weekday_hist_; }
  const std::map<std::string, double>& event_type_counts() const { return type_counts_; }
  const std::unordered_set<std::string>& seen_paths() const { return paths_; }
  const std::unordered_set<std::string>& seen_ips() const { return ips_; }
  const std::map<std::string, double>& ip_counts() const { return ip_counts_; }
  const std::map<std::string, double>& subnet_counts() const { return subnet_counts_; }
  const std::map<std::string, double>& transition_counts() const { return trans_counts_; }
  const std::map<std::string, double>& transition_row_totals() const { return trans_rows_; }
  const std::map<std::string, double>& ngram_counts() const { return ngram_counts_; }

  size_t login_attempts() const { return login_attempts_; }
  size_t login_successes() const { return login_successes_; }
  size_t login_failures() const { return login_failures_; }
  size_t penalty_events() const { return penalty_events_; }

  // Most frequent historical IP / /24 subnet; ties resolved toward the
  // lexicographically smallest so results never depend on map internals.
  // Empty string when no IPs have been seen.
  const std::string& primary_ip() const { return primary_ip_; }
  const std::string& primary_subnet() const { return primary_subnet_; }

  // Nearest-rank percentile bounds of the historical activity hours.
  // Empty history widens to [0, 23] (nothing counts as out-of-hours).
  void hour_bounds(int& q_low, int& q_high) const;

  // Mean maximal-run length of the historical event-type sequence; 1.0 when
  // the history is empty so ratio features stay finite.
  double expected_run_length() const;

  // Conditional probability of the transition from -> to; 0 when the source
  // type was never seen.
  double transition_prob(const std::string& from, const std::string& to) const;

  // Authentication failure rate (failures / attempts, eps-guarded) for the
  // first and second halves of the history, split at the median event index.
  double early_fail_rate() const;
  double late_fail_rate() const;

  static std::string transition_key(const std::string& from, const std::string& to) {
    return from + '\x1f' + to;
  }
  static std::string ngram_key(const std::string& a, const std::string& b,
                               const std::string& c) {
    return a + '\x1f' + b + '\x1f' + c;
  }

private:
  size_t total_events_ = 0;
  int64_t first_time_ = 0;
  int64_t last_time_ = 0;

  std::map<int64_t, double> day_counts_;
  std::vector<double> hour_hist_ = std::vector<double>(24, 0.0);
  std::vector<double> weekday_hist_ = std::vector<double>(7, 0.0);
  std::map<std::string, double> type_counts_;
  std::unordered_set<std::string> paths_;
  std::unordered_set<std::string> ips_;
  std::map<std::string, double> ip_counts_;
  std::map<std::string, double> subnet_counts_;

  std::string primary_ip_;
  std::string primary_subnet_;
  double primary_ip_count_ = 0.0;
  double primary_subnet_count_ = 0.0;

  size_t login_attempts_ = 0;
  size_t login_successes_ = 0;
  size_t login_failures_ = 0;
  size_t penalty_events_ = 0;

  // cumulative (attempts, failures) after each event; index 0 = empty prefix
  std::vector<uint32_t> login_prefix_ = {0};
  std::vector<uint32_t> fail_prefix_ = {0};

  std::map<std::string, double> trans_counts_;  // "from\x1fto" -> count
  std::map<std::string, double> trans_rows_;    // "from" -> outgoing total
  std::map<std::string, double> ngram_counts_;  // "a\x1fb\x1fc" -> count

  size_t run_count_ = 0;
  std::string last_type_;
  std::string prev_type_;  // type before last (for trigrams)
  bool has_last_ = false;
  bool has_prev_ = false;
};

}  // namespace ueba
