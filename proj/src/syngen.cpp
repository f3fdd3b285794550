#include "ueba/syngen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ueba/rng.hpp"
#include "ueba/timeparse.hpp"

namespace ueba {

std::vector<std::string> default_vocabulary(size_t size) {
  static const std::vector<std::string> base = {
      "login_successful",     "login_failed",     "logout",
      "file_accessed",        "file_created",     "file_deleted",
      "file_downloaded",      "file_uploaded",    "file_renamed",
      "share_created",        "share_accepted",   "public_share_accessed",
      "permission_changed",   "file_moved",       "file_copied",
      "folder_created",       "folder_deleted",   "file_previewed",
      "file_restored",        "file_trashed",     "tag_added",
      "comment_created",      "password_changed", "settings_changed",
      "file_locked",          "file_unlocked",    "quota_exceeded",
      "version_restored",     "link_expired",     "group_joined"};
  if (size > base.size()) size = base.size();
  return {base.begin(), base.begin() + static_cast<long>(size)};
}

std::vector<UserProfile> make_profiles(const GeneratorConfig& config) {
  auto vocab = default_vocabulary(config.vocabulary_size);
  std::vector<UserProfile> profiles;
  profiles.reserve(config.users);

  for (size_t u = 0; u < config.users; ++u) {
    char name[32];
    std::snprintf(name, sizeof(name), "user%03zu", u);
    Rng rng = Rng::stream(config.seed, "profile", u);

    UserProfile p;
    p.user_id = name;
    p.daily_rate = rng.uniform(config.rate_min, config.rate_max);
    p.active_hour_mean = rng.uniform(8.0, 17.0);
    p.active_hour_std = rng.uniform(1.5, 3.0);
    p.login_fail_prob = rng.uniform(0.005, 0.05);
    p.fail_repeat_prob = rng.uniform(0.3, 0.7);
    p.ip_deviation_prob = rng.uniform(0.005, 0.05);

    // Per-user event mix: a heavy common core plus a user-specific tilt, so
    // some users legitimately lean on sensitive types (shares, deletions)
    // and raw counts alone cannot separate them from misuse.
    p.event_type_weights.resize(vocab.size());
    for (size_t i = 0; i < vocab.size(); ++i) {
      double base = (i < 8) ? 6.0 : 1.0;  // core types dominate
      double tilt = rng.uniform(0.2, 1.0);
      if (rng.next_double() < 0.15) tilt *= rng.uniform(3.0, 8.0);  // per-user quirk
      p.event_type_weights[i] = base * tilt;
    }

    size_t pool = 30 + static_cast<size_t>(rng.uniform_int(0, 40));
    p.path_pool.reserve(pool);
    for (size_t k = 0; k < pool; ++k) {
      p.path_pool.push_back("/home/" + p.user_id + "/files/doc_" + std::to_string(k) +
                            ".dat");
    }

    uint64_t h = splitmix64(config.seed ^ fnv1a64(p.user_id) ^ fnv1a64("syn-primary"));
    p.primary_ip = "10." + std::to_string(h & 0xff) + "." + std::to_string((h >> 8) & 0xff) +
                   "." + std::to_string((h >> 16) % 254 + 1);
    uint64_t h2 = splitmix64(config.seed ^ fnv1a64(p.user_id) ^ fnv1a64("syn-deviation"));
    p.deviation_ip = "192.168." + std::to_string(h2 & 0xff) + "." +
                     std::to_string((h2 >> 8) % 254 + 1);
    profiles.push_back(std::move(p));
  }
  return profiles;
}

namespace {

// One simulated day for one user. Timestamps cluster in the activity band;
// failed logins arrive in short runs so benign windows occasionally resemble
// authentication trouble.
void generate_day(const UserProfile& p, int64_t day_start, Rng& rng,
                  const std::vector<std::string>& vocab,
                  const std::vector<double>& type_cum, const std::vector<double>& path_cum,
                  std::vector<Event>& out) {
  uint64_t count = rng.poisson(p.daily_rate);
  for (uint64_t i = 0; i < count; ++i) {
    double sec = rng.normal(p.active_hour_mean * 3600.0, p.active_hour_std * 3600.0);
    sec = std::clamp(sec, 0.0, 86399.0);

    Event e;
    e.user_id = p.user_id;
    e.timestamp = day_start + static_cast<int64_t>(sec);
    e.ip_address = (rng.next_double() < p.ip_deviation_prob) ? p.deviation_ip : p.primary_ip;

    size_t type_idx = rng.categorical(type_cum);
    e.event_type = vocab[type_idx];

    if (is_login_attempt(e.event_type)) {
      bool fail = rng.next_double() < p.login_fail_prob;
      e.event_type = fail ? "login_failed" : "login_successful";
      if (fail) {
        // retry run: a couple more failures seconds apart, then a success
        out.push_back(e);
        int64_t t = e.timestamp;
        while (rng.next_double() < p.fail_repeat_prob) {
          t += rng.uniform_int(3, 30);
          Event retry = e;
          retry.timestamp = t;
          out.push_back(retry);
        }
        Event ok = e;
        ok.event_type = "login_successful";
        ok.timestamp = t + rng.uniform_int(3, 30);
        out.push_back(ok);
        continue;
      }
    } else if (!p.path_pool.empty()) {
      e.path = p.path_pool[rng.categorical(path_cum)];
    }
    out.push_back(std::move(e));
  }
}

}  // namespace

std::vector<UserStream> generate(const std::vector<UserProfile>& profiles, size_t days,
                                 uint64_t seed, int64_t start_time) {
  if (days < 1) throw std::invalid_argument("days must be >= 1");
  auto vocab = default_vocabulary(SIZE_MAX);

  std::vector<UserStream> streams;
  streams.reserve(profiles.size());
  for (const auto& p : profiles) {
    Rng rng = Rng::stream(seed, "generate:" + p.user_id);

    std::vector<double> type_cum = cumulative_weights(p.event_type_weights);
    std::vector<double> zipf(p.path_pool.size());
    for (size_t k = 0; k < zipf.size(); ++k)
      zipf[k] = 1.0 / std::pow(static_cast<double>(k + 1), 1.2);
    std::vector<double> path_cum = cumulative_weights(zipf);

    // Full vocabulary list is shared; per-user weights may be shorter when a
    // smaller vocabulary was configured.
    std::vector<std::string> user_vocab(vocab.begin(),
                                        vocab.begin() + static_cast<long>(std::min(
                                                            vocab.size(),
                                                            p.event_type_weights.size())));

    UserStream s;
    s.user_id = p.user_id;
    for (size_t d = 0; d < days; ++d) {
      generate_day(p, start_time + static_cast<int64_t>(d) * kSecondsPerDay, rng, user_vocab,
                   type_cum, path_cum, s.events);
    }
    std::stable_sort(s.events.begin(), s.events.end(),
                     [](const Event& a, const Event& b) { return a.timestamp < b.timestamp; });
    streams.push_back(std::move(s));
  }
  std::sort(streams.begin(), streams.end(),
            [](const UserStream& a, const UserStream& b) { return a.user_id < b.user_id; });
  return streams;
}

std::vector<UserStream> generate(const GeneratorConfig& config) {
  return generate(make_profiles(config), config.days, config.seed, config.start_time);
}

}  // namespace ueba
