#include "ueba/history.hpp"

#include <cmath>
#include <stdexcept>

#include "ueba/stats.hpp"
#include "ueba/timeparse.hpp"

namespace ueba {

void UserHistoryAccumulator::update(const Event& e) {
  if (total_events_ > 0 && e.timestamp < last_time_)
    throw std::logic_error("history update out of order for user " + e.user_id);

  if (total_events_ == 0) first_time_ = e.timestamp;
  last_time_ = e.timestamp;
  ++total_events_;

  day_counts_[day_of(e.timestamp)] += 1.0;
  hour_hist_[static_cast<size_t>(hour_of(e.timestamp))] += 1.0;
  weekday_hist_[static_cast<size_t>(weekday_of(e.timestamp))] += 1.0;
  type_counts_[e.event_type] += 1.0;

  if (!e.path.empty()) paths_.insert(e.path);

  if (!e.ip_address.empty()) {
    ips_.insert(e.ip_address);
    double c = (ip_counts_[e.ip_address] += 1.0);
    if (c > primary_ip_count_ || (c == primary_ip_count_ && e.ip_address < primary_ip_)) {
      primary_ip_count_ = c;
      primary_ip_ = e.ip_address;
    }
    std::string sn = subnet24(e.ip_address);
    double sc = (subnet_counts_[sn] += 1.0);
    if (sc > primary_subnet_count_ || (sc == primary_subnet_count_ && sn < primary_subnet_)) {
      primary_subnet_count_ = sc;
      primary_subnet_ = sn;
    }
  }

  bool attempt = is_login_attempt(e.event_type);
  bool failure = is_login_failure(e.event_type);
  if (attempt) {
    ++login_attempts_;
    if (failure)
      ++login_failures_;
    else
      ++login_successes_;
  }
  if (is_penalty(e.event_type)) ++penalty_events_;
  login_prefix_.push_back(static_cast<uint32_t>(login_attempts_));
  fail_prefix_.push_back(static_cast<uint32_t>(login_failures_));

  if (has_last_) {
    trans_counts_[transition_key(last_type_, e.event_type)] += 1.0;
    trans_rows_[last_type_] += 1.0;
    if (e.event_type != last_type_) ++run_count_;
  } else {
    run_count_ = 1;
  }
  if (has_prev_) ngram_counts_[ngram_key(prev_type_, last_type_, e.event_type)] += 1.0;

  prev_type_ = last_type_;
  has_prev_ = has_last_;
  last_type_ = e.event_type;
  has_last_ = true;
}

void UserHistoryAccumulator::hour_bounds(int& q_low, int& q_high) const {
  double n = 0.0;
  for (double c : hour_hist_) n += c;
  if (n <= 0.0) {
    q_low = 0;
    q_high = 23;
    return;
  }
  // nearest-rank: value at rank ceil(p * n), 1-based
  auto rank_hour = [&](double p) {
    double target = std::ceil(p * n);
    if (target < 1.0) target = 1.0;
    double seen = 0.0;
    for (int h = 0; h < 24; ++h) {
      seen += hour_hist_[static_cast<size_t>(h)];
      if (seen >= target) return h;
    }
    return 23;
  };
  q_low = rank_hour(0.025);
  q_high = rank_hour(0.975);
}

double UserHistoryAccumulator::expected_run_length() const {
  if (total_events_ == 0 || run_count_ == 0) return 1.0;
  return static_cast<double>(total_events_) / static_cast<double>(run_count_);
}

double UserHistoryAccumulator::transition_prob(const std::string& from,
                                               const std::string& to) const {
  auto row = trans_rows_.find(from);
  if (row == trans_rows_.end() || row->second <= 0.0) return 0.0;
  auto it = trans_counts_.find(transition_key(from, to));
  if (it == trans_counts_.end()) return 0.0;
  return it->second / row->second;
}

double UserHistoryAccumulator::early_fail_rate() const {
  size_t half = total_events_ / 2;
  double attempts = login_prefix_[half];
  double fails = fail_prefix_[half];
  return fails / (attempts + kEps);
}

double UserHistoryAccumulator::late_fail_rate() const {
  size_t half = total_events_ / 2;
  double attempts = static_cast<double>(login_attempts_) - login_prefix_[half];
  double fails = static_cast<double>(login_failures_) - fail_prefix_[half];
  return fails / (attempts + kEps);
}

}  // namespace ueba
