#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "ueba/rng.hpp"
#include "ueba/windowing.hpp"

using namespace ueba;

namespace {

UserStream make_stream(const std::string& user, size_t n, int64_t start = 1000,
                       int64_t gap = 60) {
  UserStream s;
  s.user_id = user;
  for (size_t i = 0; i < n; ++i) {
    Event e;
    e.user_id = user;
    e.timestamp = start + static_cast<int64_t>(i) * gap;
    e.event_type = "file_accessed";
    s.events.push_back(e);
  }
  return s;
}

}  // namespace

TEST_CASE("window counts for exact, overlapping, and short streams") {
  CHECK(slide_windows(make_stream("u", 50), 50, 25).size() == 1);
  CHECK(slide_windows(make_stream("u", 100), 50, 25).size() == 3);  // offsets 0, 25, 50
  CHECK(slide_windows(make_stream("u", 49), 50, 25).empty());
}

TEST_CASE("windows carry seq_index, bounds and times") {
  auto ws = slide_windows(make_stream("u", 100, 0, 10), 50, 25);
  REQUIRE(ws.size() == 3);
  for (size_t i = 0; i < ws.size(); ++i) {
    CHECK(ws[i].seq_index == i);
    CHECK(ws[i].begin == i * 25);
    CHECK(ws[i].size == 50);
    CHECK(ws[i].start_time == static_cast<int64_t>(i * 25) * 10);
    CHECK(ws[i].end_time == static_cast<int64_t>(i * 25 + 49) * 10);
    CHECK(ws[i].start_time <= ws[i].end_time);
  }
}

TEST_CASE("window index coverage is the exact prefix range") {
  Rng rng(3);
  for (int it = 0; it < 50; ++it) {
    size_t n = static_cast<size_t>(rng.uniform_int(2, 400));
    size_t w = static_cast<size_t>(rng.uniform_int(2, 60));
    size_t s = static_cast<size_t>(rng.uniform_int(1, static_cast<int64_t>(w)));
    auto ws = slide_windows(make_stream("u", n), w, s);
    if (n < w) {
      CHECK(ws.empty());
      continue;
    }
    CHECK(ws.size() == (n - w) / s + 1);
    std::set<size_t> covered;
    size_t last_start = 0;
    for (const auto& win : ws) {
      CHECK(win.begin + win.size <= n);
      last_start = win.begin;
      for (size_t i = win.begin; i < win.begin + win.size; ++i) covered.insert(i);
    }
    CHECK(covered.size() == last_start + w);  // contiguous prefix [0, last_start + w)
    CHECK(*covered.begin() == 0);
    CHECK(*covered.rbegin() == last_start + w - 1);
  }
}

TEST_CASE("windowing is deterministic") {
  auto a = slide_windows(make_stream("u", 321), 50, 25);
  auto b = slide_windows(make_stream("u", 321), 50, 25);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].begin == b[i].begin);
    CHECK(a[i].start_time == b[i].start_time);
  }
}

TEST_CASE("invalid parameters throw") {
  auto s = make_stream("u", 10);
  CHECK_THROWS(slide_windows(s, 1, 1));
  CHECK_THROWS(slide_windows(s, 10, 0));
  CHECK_THROWS(slide_windows(s, 10, 11));
}

TEST_CASE("labeling uses closed-interval overlap per user") {
  // window 10:00-11:00 on 2017-07-07
  WindowSlice w;
  w.user_id = "alice";
  w.start_time = 1499421600;
  w.end_time = 1499425200;
  std::vector<WindowSlice> ws = {w};

  SUBCASE("partial overlap labels 1") {
    label_windows(ws, {{"alice", 1499423400, 1499452200}});  // 10:30 - 18:30
    CHECK(ws[0].label == 1);
  }
  SUBCASE("touching boundary labels 1") {
    label_windows(ws, {{"alice", 1499425200, 1499454000}});  // starts exactly at 11:00
    CHECK(ws[0].label == 1);
  }
  SUBCASE("other user's interval stays 0") {
    label_windows(ws, {{"bob", 1499421600, 1499450400}});
    CHECK(ws[0].label == 0);
  }
  SUBCASE("disjoint interval stays 0") {
    label_windows(ws, {{"alice", 1499425201, 1499454000}});
    CHECK(ws[0].label == 0);
  }
}

TEST_CASE("widening an interval never flips a label to 0") {
  Rng rng(9);
  for (int it = 0; it < 200; ++it) {
    WindowSlice w;
    w.user_id = "u";
    w.start_time = rng.uniform_int(0, 10000);
    w.end_time = w.start_time + rng.uniform_int(0, 5000);
    HijackInterval iv{"u", rng.uniform_int(0, 10000), 0};
    iv.end = iv.start + rng.uniform_int(0, 5000);

    std::vector<WindowSlice> ws = {w};
    label_windows(ws, {iv});
    int before = ws[0].label;

    HijackInterval wider{"u", iv.start - rng.uniform_int(0, 1000),
                         iv.end + rng.uniform_int(0, 1000)};
    label_windows(ws, {wider});
    CHECK(ws[0].label >= before);
  }
}
