#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "test_util.hpp"
#include "ueba/inject.hpp"
#include "ueba/syngen.hpp"
#include "ueba/windowing.hpp"

using namespace ueba;

namespace {

std::vector<UserStream> small_corpus(size_t users = 12, size_t days = 4, uint64_t seed = 31) {
  GeneratorConfig cfg;
  cfg.users = users;
  cfg.days = days;
  cfg.seed = seed;
  return generate(cfg);
}

// multiset difference: events present in `after` but not in `before`
std::vector<Event> added_events(const UserStream& before, const UserStream& after) {
  std::multiset<std::string> orig;
  auto key = [](const Event& e) {
    return std::to_string(e.timestamp) + '|' + e.event_type + '|' + e.path + '|' +
           e.ip_address;
  };
  for (const auto& e : before.events) orig.insert(key(e));
  std::vector<Event> added;
  for (const auto& e : after.events) {
    auto it = orig.find(key(e));
    if (it != orig.end())
      orig.erase(it);
    else
      added.push_back(e);
  }
  return added;
}

}  // namespace

TEST_CASE("candidate selection and bad configurations") {
  auto streams = small_corpus();
  InjectionConfig cfg;

  SUBCASE("nobody qualifies -> fatal") {
    cfg.min_candidate_events = 1000000;
    CHECK_THROWS(inject(streams, cfg));
  }

  SUBCASE("selection caps at max_incidents distinct users") {
    cfg.max_incidents = 5;
    auto copy = streams;
    auto report = inject(copy, cfg);
    CHECK(report.intervals.size() == 5);
    std::set<std::string> users;
    for (const auto& iv : report.intervals) users.insert(iv.user_id);
    CHECK(users.size() == 5);
  }

  SUBCASE("same seed gives the same selection") {
    cfg.max_incidents = 6;
    auto c1 = streams, c2 = streams;
    auto r1 = inject(c1, cfg);
    auto r2 = inject(c2, cfg);
    REQUIRE(r1.intervals.size() == r2.intervals.size());
    for (size_t i = 0; i < r1.intervals.size(); ++i) {
      CHECK(r1.intervals[i].user_id == r2.intervals[i].user_id);
      CHECK(r1.intervals[i].start == r2.intervals[i].start);
    }
  }
}

TEST_CASE("incident anatomy") {
  auto streams = small_corpus();
  auto original = streams;
  InjectionConfig cfg;
  cfg.max_incidents = 8;
  cfg.rng_seed = 77;
  auto report = inject(streams, cfg);
  REQUIRE(!report.incidents.empty());

  for (const auto& inc : report.incidents) {
    // interval is exactly the configured duration
    CHECK(inc.end - inc.start == cfg.hijack_duration);
    CHECK(inc.prefail_count >= 3);
    CHECK(inc.prefail_count <= 7);
    CHECK(inc.burst_count >= cfg.burst_min);
    CHECK(inc.burst_count <= cfg.burst_max);
    CHECK(inc.attacker_ips.size() >= 2);
    CHECK(inc.attacker_ips.size() <= 4);

    auto before = std::find_if(original.begin(), original.end(),
                               [&](const auto& s) { return s.user_id == inc.user_id; });
    auto after = std::find_if(streams.begin(), streams.end(),
                              [&](const auto& s) { return s.user_id == inc.user_id; });
    auto added = added_events(*before, *after);
    CHECK(added.size() == inc.prefail_count + inc.burst_count);

    std::set<std::string> victim_ips;
    for (const auto& e : before->events)
      if (!e.ip_address.empty()) victim_ips.insert(e.ip_address);

    size_t prefails = 0;
    for (const auto& e : added) {
      // timestamps confined to [start - lead, end]
      CHECK(e.timestamp >= inc.start - cfg.prefail_lead);
      CHECK(e.timestamp <= inc.end);
      // attacker IPs disjoint from the victim's history
      CHECK(!victim_ips.count(e.ip_address));
      CHECK(std::find(inc.attacker_ips.begin(), inc.attacker_ips.end(), e.ip_address) !=
            inc.attacker_ips.end());
      if (e.event_type == "login_failed" && e.timestamp < inc.start) ++prefails;
    }
    CHECK(prefails == inc.prefail_count);

    // at least one consecutive pair inside the interval switches IP in < 5min
    bool geo = false;
    for (size_t i = 1; i < after->events.size(); ++i) {
      const auto& a = after->events[i - 1];
      const auto& b = after->events[i];
      if (a.timestamp < inc.start - cfg.prefail_lead || b.timestamp > inc.end) continue;
      if (!a.ip_address.empty() && !b.ip_address.empty() && a.ip_address != b.ip_address &&
          b.timestamp - a.timestamp < 300)
        geo = true;
    }
    CHECK(geo);

    // streams stay sorted
    for (size_t i = 1; i < after->events.size(); ++i)
      CHECK(after->events[i - 1].timestamp <= after->events[i].timestamp);
  }
}

TEST_CASE("injection is additive: removing injected events restores the original") {
  auto streams = small_corpus();
  auto original = streams;
  InjectionConfig cfg;
  cfg.max_incidents = 4;
  auto report = inject(streams, cfg);

  for (size_t u = 0; u < streams.size(); ++u) {
    auto added = added_events(original[u], streams[u]);
    CHECK(streams[u].events.size() == original[u].events.size() + added.size());
    // strip the added events; what remains must equal the original exactly
    std::vector<Event> rest;
    std::multiset<std::string> added_keys;
    auto key = [](const Event& e) {
      return std::to_string(e.timestamp) + '|' + e.event_type + '|' + e.path + '|' +
             e.ip_address;
    };
    for (const auto& e : added) added_keys.insert(key(e));
    for (const auto& e : streams[u].events) {
      auto it = added_keys.find(key(e));
      if (it != added_keys.end())
        added_keys.erase(it);
      else
        rest.push_back(e);
    }
    REQUIRE(rest.size() == original[u].events.size());
    for (size_t i = 0; i < rest.size(); ++i) CHECK(rest[i] == original[u].events[i]);
  }
}

TEST_CASE("every incident yields at least one hijacked window at W=50 S=25") {
  auto streams = small_corpus(10, 5, 13);
  InjectionConfig cfg;
  cfg.max_incidents = 6;
  cfg.rng_seed = 5;
  auto report = inject(streams, cfg);

  auto windows = slide_windows_all(streams, 50, 25);
  label_windows(windows, report.intervals);
  for (const auto& iv : report.intervals) {
    size_t hits = 0;
    for (const auto& w : windows)
      if (w.user_id == iv.user_id && w.label == 1 && w.start_time <= iv.end &&
          iv.start <= w.end_time)
        ++hits;
    CHECK(hits >= 1);
  }
}

TEST_CASE("hijacked-window share lands in a workable band on a synthetic corpus") {
  auto streams = small_corpus(12, 3, 211);
  InjectionConfig cfg;
  cfg.max_incidents = 10;
  cfg.rng_seed = 3;
  auto report = inject(streams, cfg);

  auto windows = slide_windows_all(streams, 50, 25);
  label_windows(windows, report.intervals);
  size_t hijacked = 0;
  for (const auto& w : windows) hijacked += static_cast<size_t>(w.label == 1);
  double frac = static_cast<double>(hijacked) / static_cast<double>(windows.size());
  CHECK(frac >= 0.05);
  CHECK(frac <= 0.20);
}

TEST_CASE("interval files round trip") {
  testutil::TempDir tmp("inject");
  auto streams = small_corpus();
  InjectionConfig cfg;
  cfg.max_incidents = 3;
  auto report = inject(streams, cfg);
  auto path = tmp.file("intervals.json");
  write_intervals_json(report, path);
  auto back = read_intervals_json(path);
  REQUIRE(back.size() == report.intervals.size());
  for (size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].user_id == report.intervals[i].user_id);
    CHECK(back[i].start == report.intervals[i].start);
    CHECK(back[i].end == report.intervals[i].end);
  }
}
