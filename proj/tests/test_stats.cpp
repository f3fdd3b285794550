#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ueba/rng.hpp"
#include "ueba/stats.hpp"

using namespace ueba;

TEST_CASE("kl of a distribution with itself is zero") {
  std::vector<double> p = {0.2, 0.3, 0.5};
  CHECK(kl_divergence(p, p) == doctest::Approx(0.0).epsilon(1e-12));

  Rng rng(11);
  for (int it = 0; it < 200; ++it) {
    size_t k = static_cast<size_t>(rng.uniform_int(1, 12));
    std::vector<double> q(k);
    for (auto& v : q) v = rng.uniform(0.01, 5.0);
    CHECK(std::fabs(kl_divergence(q, q)) < 1e-12);
  }
}

TEST_CASE("kl is asymmetric in general") {
  std::vector<double> p = {0.9, 0.1};
  std::vector<double> q = {0.1, 0.9};
  CHECK(kl_divergence(p, q) != doctest::Approx(kl_divergence(q, p)).epsilon(1e-6));
}

TEST_CASE("kl hand-computed values") {
  // 0.75 ln 1.5 + 0.25 ln 0.5; smoothing perturbs below 1e-4
  std::vector<double> p = {0.75, 0.25};
  std::vector<double> q = {0.5, 0.5};
  double expected = 0.75 * std::log(1.5) + 0.25 * std::log(0.5);
  CHECK(kl_divergence(p, q) == doctest::Approx(expected).epsilon(1e-4));

  // degenerate window distribution vs uniform history
  std::vector<double> p2 = {1.0, 0.0};
  CHECK(kl_divergence(p2, q) == doctest::Approx(std::log(2.0)).epsilon(1e-3));
}

TEST_CASE("kl of empty support is zero") {
  std::vector<double> empty;
  CHECK(kl_divergence(empty, empty) == 0.0);
}

TEST_CASE("js divergence is symmetric and bounded by ln 2") {
  Rng rng(42);
  for (int it = 0; it < 500; ++it) {
    size_t k = static_cast<size_t>(rng.uniform_int(1, 10));
    std::vector<double> p(k), q(k);
    for (auto& v : p) v = rng.uniform(0.0, 3.0);
    for (auto& v : q) v = rng.uniform(0.0, 3.0);
    double a = js_divergence(p, q);
    double b = js_divergence(q, p);
    CHECK(std::fabs(a - b) < 1e-12);
    CHECK(a >= 0.0);
    CHECK(a <= std::log(2.0) + 1e-12);
  }
  std::vector<double> p = {0.4, 0.6};
  CHECK(js_divergence(p, p) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("entropy of uniform over k bins is ln k") {
  for (size_t k = 1; k <= 16; ++k) {
    std::vector<double> counts(k, 3.0);
    CHECK(shannon_entropy(counts) ==
          doctest::Approx(std::log(static_cast<double>(k))).epsilon(1e-12));
  }
  std::vector<double> single = {0.0, 7.0, 0.0};
  CHECK(shannon_entropy(single) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("population stddev") {
  CHECK(stddev({5, 5, 5}) == doctest::Approx(0.0));
  CHECK(stddev({2, 4, 6}) == doctest::Approx(std::sqrt(8.0 / 3.0)).epsilon(1e-9));
  CHECK(stddev({2, 4}) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("pearson correlation guards") {
  CHECK(pearson({1, 1, 1}, {2, 3, 4}) == 0.0);  // zero variance
  CHECK(pearson({1}, {2}) == 0.0);              // too short
  CHECK(pearson({1, 2, 3}, {2, 4, 6}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pearson({1, 2, 3}, {6, 4, 2}) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("align_union walks both maps deterministically") {
  std::map<std::string, double> a = {{"a", 1.0}, {"c", 2.0}};
  std::map<std::string, double> b = {{"b", 3.0}, {"c", 4.0}};
  std::vector<double> va, vb;
  align_union(a, b, va, vb);
  CHECK(va == std::vector<double>{1.0, 0.0, 2.0});
  CHECK(vb == std::vector<double>{0.0, 3.0, 4.0});
}
