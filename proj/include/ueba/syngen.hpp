#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ueba/event.hpp"

namespace ueba {

// Benign-traffic generator: realistic enough that the full pipeline and its
// acceptance checks run without any external dataset. Per-user behavior is a
// daily Poisson volume, a Gaussian active-hours band, a per-user event-type
// mix over a shared vocabulary, Zipf-weighted paths, and a primary IP with
// occasional deviations.

struct UserProfile {
  std::string user_id;
  double daily_rate = 200.0;       // mean events/day
  double active_hour_mean = 13.0;  // center of the activity band
  double active_hour_std = 2.5;    // hours
  std::vector<double> event_type_weights;  // aligned with the vocabulary
  std::vector<std::string> path_pool;      // Zipf-weighted, heaviest first
  std::string primary_ip;
  std::string deviation_ip;
  double ip_deviation_prob = 0.02;
  double login_fail_prob = 0.02;  // chance a login attempt fails
  double fail_repeat_prob = 0.5;  // chance a failed login is retried and fails again
};

struct GeneratorConfig {
  size_t users = 60;
  size_t days = 13;
  uint64_t seed = 42;
  int64_t start_time = 1499385600;  // 2017-07-07T00:00:00Z
  size_t vocabulary_size = 24;
  double rate_min = 150.0;
  double rate_max = 350.0;
};

// The shared event-type vocabulary; the first `size` entries are used.
// Login and sensitive-keyword types appear early so every truncation keeps a
// workable mix.
std::vector<std::string> default_vocabulary(size_t size);

// Deterministic profiles derived from (seed, user index).
std::vector<UserProfile> make_profiles(const GeneratorConfig& config);

// Canonical-sorted streams; per-user RNG streams keyed by (seed, user_id), so
// generation order never affects output.
std::vector<UserStream> generate(const std::vector<UserProfile>& profiles, size_t days,
                                 uint64_t seed, int64_t start_time = 1499385600);

std::vector<UserStream> generate(const GeneratorConfig& config);

}  // namespace ueba
