#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace ueba {

// All randomness in the pipeline flows through named streams derived from a
// single 64-bit seed. Stream derivation is splitmix64 over (seed ^ tag-hash),
// and the engine is std::mt19937_64, whose output sequence is fixed by the
// standard, so results are identical across platforms. std::*_distribution is
// never used (implementations differ); draws below are hand-rolled.

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

class Rng {
public:
  explicit Rng(uint64_t seed) : engine_(splitmix64(seed)) {}

  // Independent stream for (seed, tag); used to key per-user / per-tree RNGs
  // so parallel execution cannot change results.
  static Rng stream(uint64_t seed, std::string_view tag) {
    return Rng(splitmix64(seed ^ fnv1a64(tag)));
  }
  static Rng stream(uint64_t seed, std::string_view tag, uint64_t index) {
    return Rng(splitmix64(splitmix64(seed ^ fnv1a64(tag)) + index));
  }

  uint64_t next_u64() { return engine_(); }

  // Uniform in [0,1) with 53-bit resolution.
  double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [lo, hi] inclusive.
  int64_t uniform_int(int64_t lo, int64_t hi) {
    uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<int64_t>(next_double() * static_cast<double>(span));
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

  // Box-Muller; one value per call (the pair's second half is discarded to
  // keep the draw count predictable).
  double normal(double mean, double stddev) {
    double u1 = next_double();
    double u2 = next_double();
    if (u1 < 1e-300) u1 = 1e-300;
    double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    return mean + stddev * z;
  }

  // Knuth multiplication in chunks so large means do not underflow exp().
  uint64_t poisson(double mean) {
    uint64_t total = 0;
    while (mean > 500.0) {
      // split off a chunk of 500
      total += poisson_small(500.0);
      mean -= 500.0;
    }
    return total + poisson_small(mean);
  }

  // Index into a cumulative weight table (weights need not be normalized).
  size_t categorical(const std::vector<double>& cumulative) {
    if (cumulative.empty()) return 0;
    double u = next_double() * cumulative.back();
    size_t lo = 0, hi = cumulative.size() - 1;
    while (lo < hi) {
      size_t mid = (lo + hi) / 2;
      if (cumulative[mid] <= u)
        lo = mid + 1;
      else
        hi = mid;
    }
    return lo;
  }

  // Fisher-Yates over indices [0, n).
  std::vector<size_t> permutation(size_t n) {
    std::vector<size_t> idx(n);
    for (size_t i = 0; i < n; ++i) idx[i] = i;
    for (size_t i = n; i > 1; --i) {
      size_t j = static_cast<size_t>(uniform_int(0, static_cast<int64_t>(i) - 1));
      std::swap(idx[i - 1], idx[j]);
    }
    return idx;
  }

private:
  uint64_t poisson_small(double mean) {
    if (mean <= 0.0) return 0;
    double limit = std::exp(-mean);
    double prod = next_double();
    uint64_t n = 0;
    while (prod > limit) {
      ++n;
      prod *= next_double();
    }
    return n;
  }

  std::mt19937_64 engine_;
};

inline std::vector<double> cumulative_weights(const std::vector<double>& w) {
  std::vector<double> cum(w.size());
  double acc = 0.0;
  for (size_t i = 0; i < w.size(); ++i) {
    acc += w[i];
    cum[i] = acc;
  }
  return cum;
}

}  // namespace ueba
