#include "ueba/inject.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

#include "ueba/syngen.hpp"
#include "ueba/timeparse.hpp"

namespace ueba {

namespace {

// 2.5-97.5 percentile hour band of the user's own activity (nearest rank);
// burst timestamps prefer hours outside it.
void activity_hour_band(const UserStream& s, int& lo, int& hi) {
  std::vector<double> hist(24, 0.0);
  for (const auto& e : s.events) hist[static_cast<size_t>(hour_of(e.timestamp))] += 1.0;
  double n = static_cast<double>(s.events.size());
  if (n <= 0) {
    lo = 0;
    hi = 23;
    return;
  }
  auto rank_hour = [&](double p) {
    double target = std::max(1.0, std::ceil(p * n));
    double seen = 0.0;
    for (int h = 0; h < 24; ++h) {
      seen += hist[static_cast<size_t>(h)];
      if (seen >= target) return h;
    }
    return 23;
  };
  lo = rank_hour(0.025);
  hi = rank_hour(0.975);
}

std::string random_attacker_ip(Rng& rng, const std::unordered_set<std::string>& victim_ips) {
  static const int first_octets[] = {203, 198, 185, 91, 45};
  for (int tries = 0; tries < 64; ++tries) {
    int a = first_octets[rng.uniform_int(0, 4)];
    std::string ip = std::to_string(a) + "." + std::to_string(rng.uniform_int(0, 255)) + "." +
                     std::to_string(rng.uniform_int(0, 255)) + "." +
                     std::to_string(rng.uniform_int(1, 254));
    if (!victim_ips.count(ip)) return ip;
  }
  throw std::runtime_error("could not draw an attacker IP disjoint from victim history");
}

}  // namespace

std::vector<std::string> select_candidates(const std::vector<UserStream>& streams,
                                           const InjectionConfig& config) {
  std::vector<std::string> out;
  for (const auto& s : streams)
    if (s.events.size() >= config.min_candidate_events) out.push_back(s.user_id);
  std::sort(out.begin(), out.end());
  return out;
}

bool inject_incident(UserStream& stream, const InjectionConfig& config, Rng& rng,
                     const std::vector<std::string>& native_suspicious,
                     IncidentSummary& summary) {
  if (stream.events.empty()) return false;
  int64_t span_begin = stream.events.front().timestamp;
  int64_t span_end = stream.events.back().timestamp;
  if (span_end - span_begin < config.hijack_duration) return false;

  int64_t start = span_begin + rng.uniform_int(0, span_end - span_begin -
                                                      config.hijack_duration);
  int64_t end = start + config.hijack_duration;

  std::unordered_set<std::string> victim_ips;
  for (const auto& e : stream.events)
    if (!e.ip_address.empty()) victim_ips.insert(e.ip_address);

  size_t n_ips = static_cast<size_t>(rng.uniform_int(2, 4));
  std::vector<std::string> attacker_ips;
  while (attacker_ips.size() < n_ips) {
    std::string ip = random_attacker_ip(rng, victim_ips);
    if (std::find(attacker_ips.begin(), attacker_ips.end(), ip) == attacker_ips.end())
      attacker_ips.push_back(ip);
  }

  std::vector<Event> injected;

  // pre-hijack failed logins in the lead-up span
  size_t prefails = static_cast<size_t>(rng.uniform_int(config.prefail_min, config.prefail_max));
  for (size_t i = 0; i < prefails; ++i) {
    Event e;
    e.user_id = stream.user_id;
    e.timestamp = start - config.prefail_lead + rng.uniform_int(0, config.prefail_lead - 1);
    e.event_type = "login_failed";
    e.ip_address = attacker_ips[static_cast<size_t>(rng.uniform_int(
        0, static_cast<int64_t>(attacker_ips.size()) - 1))];
    injected.push_back(std::move(e));
  }

  // suspicious burst: one timestamp per stratum keeps the incident spread
  // over the full interval, off-hours preferred within each stratum, and the
  // edge strata hug the interval bounds so labeled windows stay anchored to
  // injected evidence
  int band_lo = 0, band_hi = 23;
  activity_hour_band(stream, band_lo, band_hi);
  size_t burst = static_cast<size_t>(
      rng.uniform_int(static_cast<int64_t>(config.burst_min),
                      static_cast<int64_t>(config.burst_max)));
  double stratum = static_cast<double>(config.hijack_duration) / static_cast<double>(burst);
  std::vector<int64_t> times(burst);
  for (size_t k = 0; k < burst; ++k) {
    int64_t lo = start + static_cast<int64_t>(stratum * static_cast<double>(k));
    int64_t hi = start + static_cast<int64_t>(stratum * static_cast<double>(k + 1)) - 1;
    if (k == 0) hi = std::min(hi, lo + 120);
    if (k == burst - 1) lo = std::max(lo, hi - 120);
    if (hi < lo) hi = lo;
    int64_t t = rng.uniform_int(lo, hi);
    for (int tries = 0; tries < 4; ++tries) {
      int h = hour_of(t);
      if (h < band_lo || h > band_hi) break;
      t = rng.uniform_int(lo, hi);
    }
    times[k] = t;
  }
  std::sort(times.begin(), times.end());
  // force one geo-impossible switch among the injected events themselves
  if (burst >= 2) {
    times[1] = std::min(end, times[0] + rng.uniform_int(30, 240));
    std::sort(times.begin(), times.end());
  }

  const std::vector<std::string>& types = native_suspicious;
  size_t prev_ip_idx = SIZE_MAX;
  for (size_t k = 0; k < burst; ++k) {
    Event e;
    e.user_id = stream.user_id;
    e.timestamp = times[k];
    e.event_type = types[static_cast<size_t>(
        rng.uniform_int(0, static_cast<int64_t>(types.size()) - 1))];
    size_t ip_idx = static_cast<size_t>(
        rng.uniform_int(0, static_cast<int64_t>(attacker_ips.size()) - 1));
    if (k == 1 && ip_idx == prev_ip_idx) ip_idx = (ip_idx + 1) % attacker_ips.size();
    e.ip_address = attacker_ips[ip_idx];
    if (contains_ci(e.event_type, "share") || contains_ci(e.event_type, "file") ||
        contains_ci(e.event_type, "permission")) {
      e.path = "/home/" + stream.user_id + "/files/doc_" +
               std::to_string(rng.uniform_int(0, 9)) + ".dat";
    }
    prev_ip_idx = ip_idx;
    injected.push_back(std::move(e));
  }

  stream.events.insert(stream.events.end(), injected.begin(), injected.end());
  std::stable_sort(stream.events.begin(), stream.events.end(),
                   [](const Event& a, const Event& b) { return a.timestamp < b.timestamp; });

  summary.user_id = stream.user_id;
  summary.start = start;
  summary.end = end;
  summary.prefail_count = prefails;
  summary.burst_count = burst;
  summary.attacker_ips = attacker_ips;
  return true;
}

InjectionReport inject(std::vector<UserStream>& streams, const InjectionConfig& config) {
  auto candidates = select_candidates(streams, config);
  if (candidates.empty())
    throw std::runtime_error("no users have at least " +
                             std::to_string(config.min_candidate_events) +
                             " events; nothing to inject into");

  Rng rng = Rng::stream(config.rng_seed, "inject");

  // sample up to max_incidents distinct users, then process in user order so
  // the single RNG stream assigns incident draws deterministically
  auto perm = rng.permutation(candidates.size());
  size_t n = std::min(config.max_incidents, candidates.size());
  std::vector<std::string> chosen;
  for (size_t i = 0; i < n; ++i) chosen.push_back(candidates[perm[i]]);
  std::sort(chosen.begin(), chosen.end());

  // native suspicious types: event types whose names match the sensitive
  // keyword list, falling back to the generator's vocabulary when the corpus
  // itself has none
  std::vector<std::string> suspicious = config.suspicious_types;
  if (suspicious.empty()) {
    std::set<std::string> seen;
    for (const auto& s : streams)
      for (const auto& e : s.events)
        if (is_sensitive(e.event_type, "")) seen.insert(e.event_type);
    suspicious.assign(seen.begin(), seen.end());
    if (suspicious.empty())
      for (const auto& t : default_vocabulary(24))
        if (is_sensitive(t, "")) suspicious.push_back(t);
  }

  InjectionReport report;
  for (const auto& uid : chosen) {
    auto it = std::find_if(streams.begin(), streams.end(),
                           [&](const UserStream& s) { return s.user_id == uid; });
    IncidentSummary summary;
    if (!inject_incident(*it, config, rng, suspicious, summary)) {
      ++report.skipped_short_span;
      std::cerr << "inject: skipping " << uid << " (activity span shorter than interval)\n";
      continue;
    }
    report.intervals.push_back({summary.user_id, summary.start, summary.end});
    report.injected_event_count += summary.prefail_count + summary.burst_count;
    report.incidents.push_back(std::move(summary));
  }
  return report;
}

void write_intervals_json(const InjectionReport& report, const std::string& path) {
  nlohmann::ordered_json j;
  j["incidents"] = nlohmann::ordered_json::array();
  for (const auto& inc : report.incidents) {
    nlohmann::ordered_json e;
    e["user_id"] = inc.user_id;
    e["start"] = format_timestamp(inc.start);
    e["end"] = format_timestamp(inc.end);
    e["prefail_count"] = inc.prefail_count;
    e["burst_count"] = inc.burst_count;
    e["attacker_ips"] = inc.attacker_ips;
    j["incidents"].push_back(e);
  }
  j["injected_event_count"] = report.injected_event_count;
  j["skipped_short_span"] = report.skipped_short_span;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
}

std::vector<HijackInterval> read_intervals_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  nlohmann::json j;
  in >> j;
  std::vector<HijackInterval> out;
  for (const auto& e : j.at("incidents")) {
    HijackInterval iv;
    iv.user_id = e.at("user_id").get<std::string>();
    auto s = parse_timestamp(e.at("start").get<std::string>());
    auto t = parse_timestamp(e.at("end").get<std::string>());
    if (!s || !t) throw std::runtime_error("bad timestamp in " + path);
    iv.start = *s;
    iv.end = *t;
    out.push_back(std::move(iv));
  }
  return out;
}

}  // namespace ueba
