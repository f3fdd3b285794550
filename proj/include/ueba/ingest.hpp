#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "ueba/event.hpp"

namespace ueba {

// Raw record shape of the cloud-activity JSON logs: one object per event with
// id/time/uid/uidType/type plus a params dictionary that may hold a path.
struct RawLogRecord {
  std::string id;
  int64_t timestamp = 0;
  std::string uid;
  std::string uid_type;
  std::string type;
  std::string path;        // from params.path when present
  std::string ip_address;  // from any of the recognized IP fields
};

struct IngestConfig {
  size_t top_n_users = 0;  // 0 = keep everyone
  double primary_ip_deviation_prob = 0.05;
  uint64_t rng_seed = 42;
};

struct IngestStats {
  size_t parsed = 0;
  size_t skipped = 0;       // malformed records
  size_t users_total = 0;   // before the top-N filter
  size_t users_kept = 0;
  size_t events_kept = 0;
  size_t synthetic_users = 0;  // users that received a synthetic primary IP
};

// Stream-parse newline-delimited or array-form JSON. Malformed records are
// counted and skipped; only an unreadable source is fatal.
std::vector<RawLogRecord> parse_stream(std::istream& in, IngestStats& stats);
std::vector<RawLogRecord> parse_json_file(const std::string& path, IngestStats& stats);

// Sorts by (user, time, file order), keeps the top-N most active users (ties
// broken by lexicographic user_id), and gives users without any native IP a
// deterministic synthetic primary IP with occasional deviations. Pure
// function of (records, config): re-running is bit-identical.
std::vector<UserStream> canonicalize(const std::vector<RawLogRecord>& records,
                                     const IngestConfig& config, IngestStats& stats);

// Synthetic IP construction, exposed for tests: primary addresses live in
// 10.0.0.0/8, deviation addresses in 192.168.0.0/16 so the two never share a
// /24 subnet.
std::string synthetic_primary_ip(uint64_t seed, const std::string& user_id);
std::string synthetic_deviation_ip(uint64_t seed, const std::string& user_id);

}  // namespace ueba
