#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ueba/event.hpp"
#include "ueba/rng.hpp"

namespace ueba {

// Synthetic account-hijack injection. Each incident is purely additive: a
// short run of failed logins from attacker IPs just before the hijack start,
// then a burst of native suspicious event types inside an 8-hour interval,
// carried by 2-4 attacker IPs with at least one geographically implausible
// switch. Removing the injected events restores the original stream exactly.

struct InjectionConfig {
  size_t max_incidents = 30;
  size_t min_candidate_events = 50;
  int64_t hijack_duration = 8 * 3600;
  int prefail_min = 3;
  int prefail_max = 7;
  size_t burst_min = 20;
  size_t burst_max = 60;
  int64_t prefail_lead = 30 * 60;  // failed logins land in this span before start
  uint64_t rng_seed = 42;
  // burst event types; empty = native types matching the sensitive keywords
  std::vector<std::string> suspicious_types;
};

struct IncidentSummary {
  std::string user_id;
  int64_t start = 0;
  int64_t end = 0;
  size_t prefail_count = 0;
  size_t burst_count = 0;
  std::vector<std::string> attacker_ips;
};

struct InjectionReport {
  std::vector<HijackInterval> intervals;
  std::vector<IncidentSummary> incidents;
  size_t injected_event_count = 0;
  size_t skipped_short_span = 0;
};

// Users with enough events to host an incident, sorted by user_id.
std::vector<std::string> select_candidates(const std::vector<UserStream>& streams,
                                           const InjectionConfig& config);

// Injects one incident into a copy of the stream. Returns false (stream
// untouched) when the user's activity span cannot contain the interval.
bool inject_incident(UserStream& stream, const InjectionConfig& config, Rng& rng,
                     const std::vector<std::string>& native_suspicious,
                     IncidentSummary& summary);

// Full corpus pass: selects up to max_incidents distinct candidate users with
// the seeded RNG and injects one incident each into the given streams. Pass a
// copy to keep the original corpus; the CLI always writes to a fresh file.
InjectionReport inject(std::vector<UserStream>& streams, const InjectionConfig& config);

void write_intervals_json(const InjectionReport& report, const std::string& path);
std::vector<HijackInterval> read_intervals_json(const std::string& path);

}  // namespace ueba
