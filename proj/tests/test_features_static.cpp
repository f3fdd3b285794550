#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "ueba/features.hpp"
#include "ueba/history.hpp"
#include "ueba/inject.hpp"
#include "ueba/rng.hpp"
#include "ueba/syngen.hpp"
#include "ueba/windowing.hpp"

using namespace ueba;

namespace {

Event ev(const std::string& user, int64_t ts, const std::string& type,
         const std::string& path = "", const std::string& ip = "") {
  return Event{user, ts, type, path, ip};
}

UserHistoryAccumulator absorb(const std::vector<Event>& events) {
  UserHistoryAccumulator acc;
  for (const auto& e : events) acc.update(e);
  return acc;
}

// window over the given events; history frozen separately
std::array<double, kStaticFeatureCount> features_for(const std::vector<Event>& hist,
                                                     const std::vector<Event>& win,
                                                     FeaturizeConfig cfg = {}) {
  auto acc = absorb(hist);
  auto ws = summarize_window(win.data(), win.size(), acc);
  return static_features(acc, ws, cfg);
}

constexpr int64_t kDay = 86400;
constexpr int64_t kBase = 1499421600;  // 2017-07-07T10:00:00Z

}  // namespace

TEST_CASE("accumulator basics and ordering guard") {
  UserHistoryAccumulator acc;
  CHECK(acc.empty());
  acc.update(ev("u", kBase, "file_accessed"));
  CHECK(acc.total_events() == 1);
  CHECK(acc.active_days() == 1);
  acc.update(ev("u", kBase + kDay, "file_accessed"));
  CHECK(acc.active_days() == 2);
  CHECK_THROWS_AS(acc.update(ev("u", kBase, "file_accessed")), std::logic_error);
}

TEST_CASE("login trust ratio from counters") {
  std::vector<Event> hist;
  for (int i = 0; i < 7; ++i) hist.push_back(ev("u", kBase + i * 60, "login_successful"));
  for (int i = 0; i < 3; ++i)
    hist.push_back(ev("u", kBase + 420 + i * 60, "login_failed"));
  auto acc = absorb(hist);
  CHECK(acc.login_attempts() == 10);
  CHECK(acc.login_successes() == 7);
  CHECK(acc.login_failures() == 3);
  // trust ratio j/(k+eps)
  std::vector<Event> win(50, ev("u", kBase + 10000, "file_accessed"));
  auto f = features_for(hist, win);
  CHECK(f[19] == doctest::Approx(7.0 / (10.0 + 1e-9)).epsilon(1e-12));
}

TEST_CASE("adalah: active days, events per day, daily std") {
  SUBCASE("ten events on one day") {
    std::vector<Event> hist;
    for (int i = 0; i < 10; ++i) hist.push_back(ev("u", kBase + i, "x"));
    std::vector<Event> win(50, ev("u", kBase + 100, "x"));
    auto f = features_for(hist, win);
    CHECK(f[0] == 1.0);
    CHECK(f[1] == 10.0);
    CHECK(f[4] == doctest::Approx(10.0).epsilon(1e-9));
  }
  SUBCASE("constant per-day counts give zero std") {
    std::vector<Event> hist;
    for (int d = 0; d < 3; ++d)
      for (int i = 0; i < 5; ++i) hist.push_back(ev("u", kBase + d * kDay + i, "x"));
    std::vector<Event> win(50, ev("u", kBase + 10 * kDay, "x"));
    auto f = features_for(hist, win);
    CHECK(f[3] == doctest::Approx(0.0));
  }
  SUBCASE("per-day counts 2,4,6") {
    std::vector<Event> hist;
    int counts[3] = {2, 4, 6};
    for (int d = 0; d < 3; ++d)
      for (int i = 0; i < counts[d]; ++i) hist.push_back(ev("u", kBase + d * kDay + i, "x"));
    std::vector<Event> win(50, ev("u", kBase + 10 * kDay, "x"));
    auto f = features_for(hist, win);
    CHECK(f[3] == doctest::Approx(1.632993).epsilon(1e-6));
  }
  SUBCASE("empty history zeroes the axis") {
    std::vector<Event> win(50, ev("u", kBase, "x"));
    auto f = features_for({}, win);
    for (int i = 0; i < 5; ++i) CHECK(f[i] == 0.0);
  }
}

TEST_CASE("dabt: burstiness, timing entropy, out-of-hours") {
  std::vector<Event> hist;
  for (int i = 0; i < 100; ++i) hist.push_back(ev("u", kBase + i * 600, "x"));

  SUBCASE("all events in one minute -> burstiness = window size") {
    std::vector<Event> win;
    for (int i = 0; i < 50; ++i) win.push_back(ev("u", kBase + 9 * kDay + i / 50, "x"));
    auto f = features_for(hist, win);
    CHECK(f[7] == 50.0);
  }
  SUBCASE("equal gaps -> zero timing entropy") {
    std::vector<Event> win;
    for (int i = 0; i < 50; ++i) win.push_back(ev("u", kBase + 9 * kDay + i * 8, "x"));
    auto f = features_for(hist, win);
    CHECK(f[9] == doctest::Approx(0.0));
  }
  SUBCASE("gaps 1,3,9,40 occupy four distinct bins -> ln 4") {
    std::vector<Event> win;
    int64_t t = kBase + 9 * kDay;
    win.push_back(ev("u", t, "x"));
    for (int64_t g : {1, 3, 9, 40}) {
      t += g;
      win.push_back(ev("u", t, "x"));
    }
    auto f = features_for(hist, win);
    CHECK(f[9] == doctest::Approx(std::log(4.0)).epsilon(1e-12));
  }
  SUBCASE("history at hour 10 means hour-3 events are out of hours") {
    std::vector<Event> win;
    for (int i = 0; i < 50; ++i)
      win.push_back(ev("u", kBase + 9 * kDay - 7 * 3600 + i, "x"));  // 03:00
    auto f = features_for(hist, win);
    CHECK(f[8] == doctest::Approx(1.0));
  }
}

TEST_CASE("isnad: ip consistency, geo switches, new ips") {
  std::vector<Event> hist;
  for (int i = 0; i < 60; ++i) hist.push_back(ev("u", kBase + i * 60, "x", "", "10.0.0.1"));

  SUBCASE("single historical ip reused all window") {
    std::vector<Event> win;
    for (int i = 0; i < 50; ++i)
      win.push_back(ev("u", kBase + kDay + i * 60, "x", "", "10.0.0.1"));
    auto f = features_for(hist, win);
    CHECK(f[12] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(f[13] == doctest::Approx(1.0));
    CHECK(f[14] == doctest::Approx(1.0));
    CHECK(f[17] == 0.0);
  }
  SUBCASE("two ips alternating every 60s") {
    std::vector<Event> win;
    for (int i = 0; i < 50; ++i)
      win.push_back(
          ev("u", kBase + kDay + i * 60, "x", "", i % 2 == 0 ? "10.0.0.1" : "10.9.0.1"));
    auto f = features_for(hist, win);
    CHECK(f[15] == doctest::Approx(49.0 / 50.0));
  }
  SUBCASE("all window ips unseen historically") {
    std::vector<Event> win;
    for (int i = 0; i < 50; ++i)
      win.push_back(ev("u", kBase + kDay + i * 60, "x", "", "203.0.113.9"));
    auto f = features_for(hist, win);
    CHECK(f[17] == 1.0);
  }
  SUBCASE("no ips in window: consistency clamps to 1, the rest 0") {
    std::vector<Event> win(50, ev("u", kBase + kDay, "x"));
    auto f = features_for(hist, win);
    CHECK(f[12] == 1.0);
    CHECK(f[13] == 0.0);
    CHECK(f[14] == 0.0);
    CHECK(f[17] == 0.0);
  }
}

TEST_CASE("reputation: duration, penalties, failure trend") {
  SUBCASE("history of one event has zero duration") {
    std::vector<Event> hist = {ev("u", kBase, "x")};
    std::vector<Event> win(50, ev("u", kBase + 100, "x"));
    auto f = features_for(hist, win);
    CHECK(f[18] == 0.0);
  }
  SUBCASE("no failures anywhere") {
    std::vector<Event> hist;
    for (int i = 0; i < 40; ++i) hist.push_back(ev("u", kBase + i * 60, "login_successful"));
    std::vector<Event> win(50, ev("u", kBase + kDay, "x"));
    auto f = features_for(hist, win);
    CHECK(f[20] == 0.0);
    CHECK(f[21] == doctest::Approx(0.0));
  }
  SUBCASE("early rate 0.1 late rate 0.3 -> trend 0.2") {
    std::vector<Event> hist;
    // first half: 10 logins, 1 fail; second half: 10 logins, 3 fails
    for (int i = 0; i < 10; ++i)
      hist.push_back(ev("u", kBase + i * 60, i == 0 ? "login_failed" : "login_successful"));
    for (int i = 0; i < 10; ++i)
      hist.push_back(
          ev("u", kBase + 600 + i * 60, i < 3 ? "login_failed" : "login_successful"));
    std::vector<Event> win(50, ev("u", kBase + kDay, "x"));
    auto f = features_for(hist, win);
    CHECK(f[21] == doctest::Approx(0.2).epsilon(1e-6));
  }
}

TEST_CASE("anomaly axis: identity, novelty, sentinel") {
  SUBCASE("window distribution equals history distribution") {
    std::vector<Event> hist;
    for (int i = 0; i < 100; ++i)
      hist.push_back(ev("u", kBase + i * 37, i % 2 == 0 ? "a" : "b", "/p1"));
    std::vector<Event> win;
    for (int i = 0; i < 50; ++i)
      win.push_back(ev("u", kBase + kDay + i * 37, i % 2 == 0 ? "a" : "b", "/p1"));
    auto f = features_for(hist, win);
    CHECK(f[22] == doctest::Approx(0.0).epsilon(1e-10));  // same type distribution
    CHECK(f[24] == 0.0);                                   // all paths historical
    CHECK(f[25] == doctest::Approx(0.0).epsilon(1e-10));
  }
  SUBCASE("empty history pins the axis to the sentinel") {
    std::vector<Event> win(50, ev("u", kBase, "x"));
    FeaturizeConfig cfg;
    auto f = features_for({}, win, cfg);
    for (int i = 22; i <= 25; ++i) CHECK(f[i] == cfg.empty_history_sentinel);
  }
}

TEST_CASE("raw count features") {
  GeneratorConfig gen;
  gen.users = 2;
  gen.days = 1;
  gen.seed = 3;
  auto streams = generate(gen);
  auto vocab = build_vocabulary(streams);

  SUBCASE("sum of entries equals the window size") {
    const auto& s = streams[0];
    size_t n = std::min<size_t>(s.events.size(), 50);
    auto f = raw_count_features(s.events.data(), n, vocab);
    double sum = 0.0;
    for (double v : f) sum += v;
    CHECK(sum == static_cast<double>(n));
  }
  SUBCASE("fifty events of one type") {
    std::vector<Event> win(50, ev("u", kBase, vocab.types[0]));
    auto f = raw_count_features(win.data(), win.size(), vocab);
    CHECK(f[0] == 50.0);
    for (size_t i = 1; i < f.size(); ++i) CHECK(f[i] == 0.0);
  }
  SUBCASE("unknown types land in the reserved bucket when present") {
    Vocabulary with_other = build_vocabulary(streams, true);
    std::vector<Event> win(10, ev("u", kBase, "never_seen_type"));
    auto f = raw_count_features(win.data(), win.size(), with_other);
    CHECK(f.back() == 10.0);
    double sum = 0.0;
    for (double v : f) sum += v;
    CHECK(sum == 10.0);
  }
}

TEST_CASE("all fraction-typed features stay in range on random corpora") {
  GeneratorConfig gen;
  gen.users = 6;
  gen.days = 3;
  gen.seed = 101;
  auto streams = generate(gen);
  InjectionConfig inj;
  inj.max_incidents = 3;
  auto report = inject(streams, inj);

  FeaturizeConfig cfg;
  auto ds = featurize(streams, report.intervals, cfg);
  auto in01 = {5, 8, 10, 11, 12, 13, 14, 15, 16, 17, 19, 20, 24};
  for (size_t r = 0; r < ds.n_rows; ++r) {
    bool first_window = ds.windows[r].seq_index == 0;
    for (int c : in01) {
      if (first_window && c == 24) continue;  // sentinel row
      CHECK(ds.at(r, static_cast<size_t>(c)) >= -1e-12);
      CHECK(ds.at(r, static_cast<size_t>(c)) <= 1.0 + 1e-12);
    }
    CHECK(ds.at(r, 7) >= 1.0);   // burstiness in [1, W]
    CHECK(ds.at(r, 7) <= 50.0);
    CHECK(ds.at(r, 9) >= 0.0);   // entropy
    if (!first_window) {
      CHECK(ds.at(r, 22) >= 0.0);  // divergences
      CHECK(ds.at(r, 23) >= 0.0);
      CHECK(ds.at(r, 25) >= 0.0);
    }
  }
}

TEST_CASE("incremental features match the from-scratch oracle") {
  GeneratorConfig gen;
  gen.users = 8;
  gen.days = 3;
  gen.seed = 55;
  auto streams = generate(gen);
  InjectionConfig inj;
  inj.max_incidents = 4;
  inj.rng_seed = 55;
  auto report = inject(streams, inj);

  FeaturizeConfig cfg;
  auto ds = featurize(streams, report.intervals, cfg);

  size_t row = 0;
  size_t compared = 0;
  for (const auto& s : streams) {
    auto windows = slide_windows(s, cfg.window_size, cfg.step);
    auto expected = oracle::trust_features(s, windows, cfg);
    for (size_t w = 0; w < windows.size(); ++w, ++row) {
      REQUIRE(ds.windows[row].user_id == s.user_id);
      REQUIRE(ds.windows[row].seq_index == w);
      for (size_t c = 0; c < kTrustFeatureCount; ++c) {
        double got = ds.at(row, c);
        double want = expected[w][c];
        double tol = 1e-9 * std::max({1.0, std::fabs(got), std::fabs(want)});
        CHECK_MESSAGE(std::fabs(got - want) <= tol,
                      "feature ", ds.columns[c].name, " row ", row, " got ", got, " want ",
                      want);
        ++compared;
      }
    }
  }
  CHECK(compared > 0);
}

TEST_CASE("user processing order never changes feature values") {
  GeneratorConfig gen;
  gen.users = 5;
  gen.days = 2;
  gen.seed = 77;
  auto streams = generate(gen);

  FeaturizeConfig cfg;
  auto a = featurize(streams, {}, cfg);

  // featurize canonicalizes processing and output order internally
  std::vector<UserStream> shuffled = {streams[3], streams[0], streams[4], streams[2],
                                      streams[1]};
  auto b = featurize(shuffled, {}, cfg);
  CHECK(a.values == b.values);

  cfg.parallel = true;
  auto c = featurize(streams, {}, cfg);
  CHECK(a.values == c.values);
}
