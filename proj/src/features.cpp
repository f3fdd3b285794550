#include "ueba/features.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <json.hpp>

#include "ueba/csv.hpp"
#include "ueba/stats.hpp"
#include "ueba/timeparse.hpp"
#include "ueba/windowing.hpp"

namespace ueba {

const std::vector<FeatureInfo>& trust_feature_info() {
  static const std::vector<FeatureInfo> info = {
      {"active_days", "adalah", 1},
      {"total_events", "adalah", 2},
      {"account_age_days", "adalah", 3},
      {"daily_std", "adalah", 4},
      {"events_per_day", "adalah", 5},
      {"login_success_rate", "dabt", 6},
      {"fail_rate_delta", "dabt", 7},
      {"burstiness", "dabt", 8},
      {"out_of_hours_frac", "dabt", 9},
      {"timing_entropy", "dabt", 10},
      {"path_divergence", "dabt", 11},
      {"sensitive_ratio", "dabt", 12},
      {"ip_consistency", "isnad", 13},
      {"primary_ip_match", "isnad", 14},
      {"subnet_match", "isnad", 15},
      {"geo_impossible_rate", "isnad", 16},
      {"session_discontinuity", "isnad", 17},
      {"new_ip_rate", "isnad", 18},
      {"history_duration_days", "reputation", 19},
      {"trust_ratio", "reputation", 20},
      {"penalty_rate", "reputation", 21},
      {"failure_trend", "reputation", 22},
      {"event_type_kl", "anomaly", 23},
      {"hour_kl", "anomaly", 24},
      {"path_novelty", "anomaly", 25},
      {"event_type_l2", "anomaly", 26},
      {"behavior_drift", "t_adalah", 27},
      {"sequence_entropy", "t_adalah", 28},
      {"rare_transition_rate", "t_adalah", 29},
      {"run_length_anomaly", "t_adalah", 30},
      {"ngram_anomaly", "t_adalah", 31},
      {"timing_shift", "t_dabt", 32},
      {"weekday_divergence", "t_dabt", 33},
      {"rate_drift", "t_dabt", 34},
      {"window_failure_trend", "t_dabt", 35},
      {"cumulative_suspicious", "t_dabt", 36},
      {"subnet_drift", "t_isnad", 37},
      {"ip_switch_rate", "t_isnad", 38},
      {"device_transition_anomaly", "t_isnad", 39},
      {"risk_acceleration", "t_reputation", 40},
      {"transition_kl", "t_reputation", 41},
      {"rate_autocorrelation", "t_reputation", 42},
  };
  return info;
}

double WindowStats::rate() const {
  return static_cast<double>(size) / (duration() + kEps);
}

double WindowStats::fail_rate() const {
  return static_cast<double>(login_failures) / (static_cast<double>(login_attempts) + kEps);
}

namespace {

// gap bins: [0,1), [1,2), [2,4), ..., [2^15,2^16), [2^16,inf) -> 18 bins
constexpr size_t kGapBins = 18;

size_t gap_bin(int64_t gap) {
  if (gap < 1) return 0;
  auto g = static_cast<uint64_t>(gap);
  size_t b = 1 + static_cast<size_t>(63 - std::countl_zero(g));
  return std::min(b, kGapBins - 1);
}

}  // namespace

WindowStats summarize_window(const Event* events, size_t count,
                             const UserHistoryAccumulator& history) {
  WindowStats w;
  w.size = count;
  if (count == 0) return w;
  w.start_time = events[0].timestamp;
  w.end_time = events[count - 1].timestamp;

  std::set<std::string> paths, ips;
  std::vector<double> gap_hist(kGapBins, 0.0);
  std::unordered_map<int64_t, size_t> minute_counts;
  double gap_sum = 0.0;
  size_t run = 1;

  for (size_t i = 0; i < count; ++i) {
    const Event& e = events[i];
    w.type_counts[e.event_type] += 1.0;
    w.hour_counts[static_cast<size_t>(hour_of(e.timestamp))] += 1.0;
    w.weekday_counts[static_cast<size_t>(weekday_of(e.timestamp))] += 1.0;

    size_t m = ++minute_counts[e.timestamp / 60];
    w.max_minute_count = std::max(w.max_minute_count, m);

    if (!e.path.empty()) paths.insert(e.path);
    if (!e.ip_address.empty()) {
      ips.insert(e.ip_address);
      w.subnet_counts[subnet24(e.ip_address)] += 1.0;
      if (!history.primary_ip().empty() && e.ip_address == history.primary_ip())
        ++w.primary_ip_matches;
      if (!history.primary_subnet().empty() &&
          subnet24(e.ip_address) == history.primary_subnet())
        ++w.primary_subnet_matches;
    }

    if (is_login_attempt(e.event_type)) {
      ++w.login_attempts;
      if (is_login_failure(e.event_type))
        ++w.login_failures;
      else
        ++w.login_successes;
    }
    if (is_sensitive(e.event_type, e.path)) ++w.sensitive_events;

    if (i > 0) {
      const Event& prev = events[i - 1];
      int64_t gap = e.timestamp - prev.timestamp;
      gap_sum += static_cast<double>(gap);
      gap_hist[gap_bin(gap)] += 1.0;
      if (gap > 3600) ++w.long_gaps;
      if (!prev.ip_address.empty() && !e.ip_address.empty() &&
          prev.ip_address != e.ip_address) {
        ++w.ip_changes;
        if (gap < 300) ++w.geo_impossible_pairs;
      }
      w.trans_counts[UserHistoryAccumulator::transition_key(prev.event_type,
                                                            e.event_type)] += 1.0;
      w.transitions.emplace_back(prev.event_type, e.event_type);
      if (e.event_type == prev.event_type) {
        ++run;
        w.max_run_length = std::max(w.max_run_length, run);
      } else {
        run = 1;
      }
    }
    if (i >= 2) {
      w.ngram_counts[UserHistoryAccumulator::ngram_key(
          events[i - 2].event_type, events[i - 1].event_type, e.event_type)] += 1.0;
    }
  }
  w.max_run_length = std::max<size_t>(w.max_run_length, 1);
  w.mean_gap = count > 1 ? gap_sum / static_cast<double>(count - 1) : 0.0;
  w.timing_entropy = count > 1 ? shannon_entropy(gap_hist) : 0.0;

  w.distinct_paths.assign(paths.begin(), paths.end());
  w.distinct_ips.assign(ips.begin(), ips.end());
  for (const auto& p : w.distinct_paths)
    if (!history.seen_paths().count(p)) ++w.novel_paths;
  for (const auto& ip : w.distinct_ips)
    if (!history.seen_ips().count(ip)) ++w.new_ips;

  double best = 0.0;
  for (const auto& [sn, c] : w.subnet_counts) {
    if (c > best) {
      best = c;
      w.dominant_subnet = sn;
    }
  }
  return w;
}

std::array<double, kStaticFeatureCount> static_features(
    const UserHistoryAccumulator& history, const WindowStats& win,
    const FeaturizeConfig& config) {
  std::array<double, kStaticFeatureCount> f{};
  const double m = static_cast<double>(win.size);

  // integrity / long-term stability
  if (!history.empty()) {
    f[0] = static_cast<double>(history.active_days());
    f[1] = static_cast<double>(history.total_events());
    f[2] = static_cast<double>(win.end_time - history.first_time()) / 86400.0;
    std::vector<double> per_day;
    per_day.reserve(history.day_counts().size());
    for (const auto& [d, c] : history.day_counts()) per_day.push_back(c);
    f[3] = stddev(per_day);
    f[4] = static_cast<double>(history.total_events()) /
           (static_cast<double>(history.active_days()) + kEps);
  }

  // precision / hygiene
  f[5] = static_cast<double>(win.login_successes) /
         (static_cast<double>(win.login_attempts) + kEps);
  double hist_fail = static_cast<double>(history.login_failures()) /
                     (static_cast<double>(history.login_attempts()) + kEps);
  f[6] = win.fail_rate() - hist_fail;
  f[7] = static_cast<double>(win.max_minute_count);
  int q_low = 0, q_high = 23;
  history.hour_bounds(q_low, q_high);
  double out_of_hours = 0.0;
  for (int h = 0; h < 24; ++h)
    if (h < q_low || h > q_high) out_of_hours += win.hour_counts[static_cast<size_t>(h)];
  f[8] = out_of_hours / m;
  f[9] = win.timing_entropy;
  f[10] = static_cast<double>(win.novel_paths) /
          (static_cast<double>(win.distinct_paths.size()) + kEps);
  f[11] = static_cast<double>(win.sensitive_events) / m;

  // chain continuity / context
  f[12] = std::min(1.0, 1.0 / (static_cast<double>(win.distinct_ips.size()) + kEps));
  f[13] = static_cast<double>(win.primary_ip_matches) / m;
  f[14] = static_cast<double>(win.primary_subnet_matches) / m;
  f[15] = static_cast<double>(win.geo_impossible_pairs) / m;
  f[16] = static_cast<double>(win.long_gaps) / m;
  f[17] = win.distinct_ips.empty()
              ? 0.0
              : static_cast<double>(win.new_ips) /
                    static_cast<double>(win.distinct_ips.size());

  // cumulative reputation
  if (!history.empty()) {
    f[18] = static_cast<double>(history.last_time() - history.first_time()) / 86400.0;
    f[19] = static_cast<double>(history.login_successes()) /
            (static_cast<double>(history.login_attempts()) + kEps);
    f[20] = static_cast<double>(history.penalty_events()) /
            static_cast<double>(history.total_events());
    f[21] = history.late_fail_rate() - history.early_fail_rate();
  }

  // anomaly evidence; an empty history cannot be compared against, so every
  // value pins to the configured sentinel
  if (history.empty()) {
    f[22] = f[23] = f[24] = f[25] = config.empty_history_sentinel;
  } else {
    f[22] = kl_divergence_maps(win.type_counts, history.event_type_counts());
    f[23] = kl_divergence(win.hour_counts, history.hour_histogram());
    f[24] = win.distinct_paths.empty()
                ? 0.0
                : static_cast<double>(win.novel_paths) /
                      static_cast<double>(win.distinct_paths.size());
    std::vector<double> vw, vh;
    align_union(win.type_counts, history.event_type_counts(), vw, vh);
    vw = normalize(vw);
    vh = normalize(vh);
    double sq = 0.0;
    for (size_t i = 0; i < vw.size(); ++i) sq += (vw[i] - vh[i]) * (vw[i] - vh[i]);
    f[25] = std::sqrt(sq);
  }
  return f;
}

std::array<double, kTemporalFeatureCount> WindowSequenceState::advance(
    const WindowSlice& window, const WindowStats& win,
    const std::array<double, kStaticFeatureCount>& stat,
    const UserHistoryAccumulator& history) {
  if (windows_seen_ > 0 && window.seq_index <= last_seq_index_)
    throw std::logic_error("windows for user " + window.user_id +
                           " visited out of seq_index order");
  last_seq_index_ = window.seq_index;

  const double m = static_cast<double>(win.size);
  bool suspicious = stat[6] > config_.suspicious_fail_delta ||
                    stat[17] > config_.suspicious_new_ip_rate ||
                    stat[8] > config_.suspicious_out_of_hours;

  // risk score: anomaly block min-max scaled by the running per-user extrema
  double risk = 0.0;
  for (size_t i = 0; i < 4; ++i) {
    double v = stat[22 + i];
    if (windows_seen_ == 0) {
      anomaly_min_[i] = anomaly_max_[i] = v;
    } else {
      anomaly_min_[i] = std::min(anomaly_min_[i], v);
      anomaly_max_[i] = std::max(anomaly_max_[i], v);
    }
    double span = anomaly_max_[i] - anomaly_min_[i];
    risk += span > kEps ? (v - anomaly_min_[i]) / span : 0.0;
  }
  risk /= 4.0;

  std::array<double, kTemporalFeatureCount> f{};
  if (windows_seen_ == 0) {
    // declared first-window defaults: everything neutral, run-length ratio 1,
    // suspicious counting starts now
    f[3] = 1.0;
    cumulative_suspicious_ = suspicious ? 1 : 0;
    f[9] = static_cast<double>(cumulative_suspicious_);
  } else {
    const Summary& prev = buffer_.back();

    // stability dynamics
    {
      std::vector<double> p, q;
      align_union(win.type_counts, prev.type_counts, p, q);
      f[0] = js_divergence(p, q);
    }
    {
      std::vector<double> counts;
      counts.reserve(win.trans_counts.size());
      for (const auto& [k, c] : win.trans_counts) counts.push_back(c);
      f[1] = shannon_entropy(counts);
    }
    if (!history.transition_row_totals().empty()) {
      size_t rare = 0;
      for (const auto& [from, to] : win.transitions)
        if (history.transition_prob(from, to) < config_.rarity_threshold) ++rare;
      f[2] = static_cast<double>(rare) / m;
    }
    f[3] = static_cast<double>(win.max_run_length) / history.expected_run_length();
    f[4] = history.ngram_counts().empty()
               ? 0.0
               : kl_divergence_maps(win.ngram_counts, history.ngram_counts());

    // precision dynamics
    f[5] = std::fabs(win.mean_gap - prev.mean_gap);
    f[6] = history.empty() ? 0.0
                           : kl_divergence(win.weekday_counts, history.weekday_histogram());
    f[7] = win.rate() - prev.rate;
    f[8] = win.fail_rate() - prev.fail_rate;
    if (suspicious) ++cumulative_suspicious_;
    f[9] = static_cast<double>(cumulative_suspicious_);

    // continuity dynamics
    f[10] = win.dominant_subnet != prev.dominant_subnet ? 1.0 : 0.0;
    f[11] = static_cast<double>(win.ip_changes) / (win.duration() + kEps);
    f[12] = history.subnet_counts().empty()
                ? 0.0
                : kl_divergence_maps(win.subnet_counts, history.subnet_counts());

    // trust trajectory
    if (risks_.size() >= 2) {
      double r1 = risks_[risks_.size() - 1];
      double r2 = risks_[risks_.size() - 2];
      f[13] = risk - 2.0 * r1 + r2;
    }
    f[14] = history.transition_counts().empty()
                ? 0.0
                : kl_divergence_maps(win.trans_counts, history.transition_counts());
    {
      std::vector<double> cur, lagged;
      std::vector<double> all(rates_.begin(), rates_.end());
      all.push_back(win.rate());
      for (size_t i = 1; i < all.size(); ++i) {
        cur.push_back(all[i]);
        lagged.push_back(all[i - 1]);
      }
      f[15] = cur.size() >= 3 ? pearson(cur, lagged) : 0.0;
    }
  }

  Summary s;
  s.type_counts = win.type_counts;
  s.mean_gap = win.mean_gap;
  s.rate = win.rate();
  s.fail_rate = win.fail_rate();
  s.dominant_subnet = win.dominant_subnet;
  buffer_.push_back(std::move(s));
  risks_.push_back(risk);
  rates_.push_back(win.rate());
  while (buffer_.size() > config_.lookback) buffer_.pop_front();
  while (risks_.size() > config_.lookback) risks_.pop_front();
  while (rates_.size() > config_.lookback) rates_.pop_front();
  ++windows_seen_;
  return f;
}

Vocabulary build_vocabulary(const std::vector<UserStream>& streams, bool reserve_other) {
  std::set<std::string> types;
  for (const auto& s : streams)
    for (const auto& e : s.events) types.insert(e.event_type);
  Vocabulary v;
  v.types.assign(types.begin(), types.end());
  if (reserve_other) {
    v.types.push_back("__other__");
    v.has_other = true;
  }
  return v;
}

std::vector<double> raw_count_features(const Event* events, size_t count,
                                       const Vocabulary& vocab) {
  std::vector<double> f(vocab.size(), 0.0);
  std::unordered_map<std::string, size_t> index;
  index.reserve(vocab.types.size());
  for (size_t i = 0; i < vocab.types.size(); ++i) index[vocab.types[i]] = i;
  size_t other = vocab.has_other ? vocab.size() - 1 : SIZE_MAX;
  for (size_t i = 0; i < count; ++i) {
    auto it = index.find(events[i].event_type);
    if (it != index.end())
      f[it->second] += 1.0;
    else if (other != SIZE_MAX)
      f[other] += 1.0;
  }
  return f;
}

namespace {

// Featurizes one user's windows against an advancing history pointer. The
// accumulator absorbs events with timestamp strictly before each window's
// start; simultaneous events stay outside until the boundary passes them.
void featurize_user(const UserStream& stream, std::vector<WindowSlice>& windows,
                    const Vocabulary& vocab, const FeaturizeConfig& config,
                    std::vector<double>& rows, size_t n_cols) {
  UserHistoryAccumulator acc;
  WindowSequenceState state(config);
  size_t absorbed = 0;
  rows.resize(windows.size() * n_cols);

  for (size_t wi = 0; wi < windows.size(); ++wi) {
    const WindowSlice& w = windows[wi];
    while (absorbed < stream.events.size() &&
           stream.events[absorbed].timestamp < w.start_time) {
      acc.update(stream.events[absorbed]);
      ++absorbed;
    }
    const Event* ev = stream.events.data() + w.begin;
    WindowStats ws = summarize_window(ev, w.size, acc);
    auto stat = static_features(acc, ws, config);
    auto temp = state.advance(w, ws, stat, acc);
    auto raw = raw_count_features(ev, w.size, vocab);

    double* row = rows.data() + wi * n_cols;
    std::copy(stat.begin(), stat.end(), row);
    std::copy(temp.begin(), temp.end(), row + kStaticFeatureCount);
    std::copy(raw.begin(), raw.end(), row + kTrustFeatureCount);
  }
}

}  // namespace

FeatureDataset featurize(const std::vector<UserStream>& streams,
                         const std::vector<HijackInterval>& intervals,
                         const FeaturizeConfig& config) {
  FeatureDataset ds;
  Vocabulary vocab = build_vocabulary(streams);
  ds.vocabulary = vocab.types;
  ds.columns = trust_feature_info();
  for (const auto& t : vocab.types) ds.columns.push_back({"raw_count_" + t, "raw", 0});
  ds.n_cols = ds.columns.size();

  // canonical output order is (user_id, seq_index) regardless of the order
  // streams were handed in or the thread schedule
  std::vector<size_t> order(streams.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return streams[a].user_id < streams[b].user_id;
  });

  std::vector<std::vector<WindowSlice>> per_user(streams.size());
  for (size_t i = 0; i < streams.size(); ++i) {
    per_user[i] = slide_windows(streams[order[i]], config.window_size, config.step);
    label_windows(per_user[i], intervals);
  }

  std::vector<std::vector<double>> user_rows(streams.size());

  if (config.parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long i = 0; i < static_cast<long>(streams.size()); ++i) {
      featurize_user(streams[order[static_cast<size_t>(i)]], per_user[static_cast<size_t>(i)],
                     vocab, config, user_rows[static_cast<size_t>(i)], ds.n_cols);
    }
  } else {
    for (size_t i = 0; i < streams.size(); ++i)
      featurize_user(streams[order[i]], per_user[i], vocab, config, user_rows[i], ds.n_cols);
  }

  for (size_t i = 0; i < streams.size(); ++i) {
    for (auto& w : per_user[i]) {
      ds.windows.push_back(w);
      ds.labels.push_back(w.label);
    }
    ds.values.insert(ds.values.end(), user_rows[i].begin(), user_rows[i].end());
  }
  ds.n_rows = ds.windows.size();

  for (double v : ds.values)
    if (!std::isfinite(v)) throw std::logic_error("non-finite feature value produced");
  return ds;
}

std::vector<size_t> FeatureDataset::column_group(const std::string& selector) const {
  std::vector<size_t> idx;
  for (size_t c = 0; c < columns.size(); ++c) {
    const std::string& axis = columns[c].axis;
    bool take = false;
    if (selector == "combined")
      take = axis != "raw";
    else if (selector == "hadith")
      take = axis == "adalah" || axis == "dabt" || axis == "isnad" ||
             axis == "reputation" || axis == "anomaly";
    else if (selector == "temporal")
      take = axis.rfind("t_", 0) == 0;
    else if (selector == "raw_counts")
      take = axis == "raw";
    else
      take = axis == selector;
    if (take) idx.push_back(c);
  }
  if (idx.empty()) throw std::invalid_argument("unknown feature selector: " + selector);
  return idx;
}

namespace {

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

void write_feature_csv(const FeatureDataset& ds, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "user_id,seq_index,start_time,end_time,label";
  for (const auto& c : ds.columns) out << ',' << c.name;
  out << "\n";
  for (size_t r = 0; r < ds.n_rows; ++r) {
    const auto& w = ds.windows[r];
    out << csv_escape(w.user_id) << ',' << w.seq_index << ','
        << format_timestamp(w.start_time) << ',' << format_timestamp(w.end_time) << ','
        << w.label;
    for (size_t c = 0; c < ds.n_cols; ++c) out << ',' << format_double(ds.at(r, c));
    out << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

FeatureDataset read_feature_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::vector<std::string> fields;
  if (!csv_read_record(in, fields)) throw std::runtime_error("empty file: " + path);
  const std::vector<std::string> meta = {"user_id", "seq_index", "start_time", "end_time",
                                         "label"};
  if (fields.size() < meta.size() + 1) throw std::runtime_error("bad feature header");
  for (size_t i = 0; i < meta.size(); ++i)
    if (fields[i] != meta[i]) throw std::runtime_error("bad feature header: " + fields[i]);

  FeatureDataset ds;
  const auto& trust = trust_feature_info();
  std::unordered_map<std::string, FeatureInfo> known;
  for (const auto& t : trust) known[t.name] = t;
  for (size_t i = meta.size(); i < fields.size(); ++i) {
    auto it = known.find(fields[i]);
    if (it != known.end()) {
      ds.columns.push_back(it->second);
    } else if (fields[i].rfind("raw_count_", 0) == 0) {
      ds.columns.push_back({fields[i], "raw", 0});
      ds.vocabulary.push_back(fields[i].substr(10));
    } else {
      throw std::runtime_error("unknown feature column: " + fields[i]);
    }
  }
  ds.n_cols = ds.columns.size();

  while (csv_read_record(in, fields)) {
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() != meta.size() + ds.n_cols)
      throw std::runtime_error("wrong field count in " + path);
    WindowSlice w;
    w.user_id = fields[0];
    w.seq_index = static_cast<size_t>(std::stoull(fields[1]));
    auto st = parse_timestamp(fields[2]);
    auto et = parse_timestamp(fields[3]);
    if (!st || !et) throw std::runtime_error("bad timestamp in " + path);
    w.start_time = *st;
    w.end_time = *et;
    w.label = std::stoi(fields[4]);
    ds.windows.push_back(w);
    ds.labels.push_back(w.label);
    for (size_t c = 0; c < ds.n_cols; ++c) {
      const std::string& s = fields[meta.size() + c];
      double v = 0.0;
      auto res = std::from_chars(s.data(), s.data() + s.size(), v);
      if (res.ec != std::errc()) throw std::runtime_error("bad numeric field: " + s);
      ds.values.push_back(v);
    }
  }
  ds.n_rows = ds.windows.size();
  return ds;
}

void write_feature_dictionary(const FeatureDataset& ds, const FeaturizeConfig& config,
                              const std::string& path) {
  nlohmann::ordered_json dict;
  dict["columns"] = nlohmann::ordered_json::array();
  for (size_t c = 0; c < ds.columns.size(); ++c) {
    nlohmann::ordered_json e;
    e["name"] = ds.columns[c].name;
    e["axis"] = ds.columns[c].axis;
    if (ds.columns[c].index > 0) e["index"] = ds.columns[c].index;
    e["column"] = c;
    dict["columns"].push_back(e);
  }
  dict["notes"]["empty_history_sentinel"] = config.empty_history_sentinel;
  dict["notes"]["sentinel_applies_to"] = "anomaly axis when a window has no prior history";
  dict["notes"]["account_age_reference"] = "window end time";
  dict["notes"]["first_window_defaults"] =
      "temporal features are neutral (0; run_length_anomaly 1) on each user's first window";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << dict.dump(2) << "\n";
}

}  // namespace ueba
