#include "ueba/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

#include "ueba/rng.hpp"
#include "ueba/timeparse.hpp"

namespace ueba {

namespace {

using json = nlohmann::json;

std::string json_string(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<int64_t>());
  if (j.is_number()) {
    std::ostringstream ss;
    ss << j.get<double>();
    return ss.str();
  }
  return {};
}

bool record_from_json(const json& j, RawLogRecord& rec) {
  if (!j.is_object()) return false;
  if (!j.contains("uid") || !j.contains("time") || !j.contains("type")) return false;

  rec = RawLogRecord{};
  rec.uid = json_string(j.at("uid"));
  if (rec.uid.empty()) return false;

  std::optional<int64_t> ts;
  const json& t = j.at("time");
  if (t.is_number_integer()) {
    ts = t.get<int64_t>();
  } else if (t.is_number_float()) {
    ts = static_cast<int64_t>(t.get<double>());
  } else if (t.is_string()) {
    ts = parse_timestamp(t.get<std::string>());
  }
  if (!ts) return false;
  rec.timestamp = *ts;

  rec.type = json_string(j.at("type"));
  if (rec.type.empty()) return false;

  if (j.contains("id")) rec.id = json_string(j.at("id"));
  if (j.contains("uidType")) rec.uid_type = json_string(j.at("uidType"));

  if (j.contains("params") && j.at("params").is_object()) {
    const json& p = j.at("params");
    if (p.contains("path")) rec.path = json_string(p.at("path"));
    if (rec.ip_address.empty() && p.contains("ip")) rec.ip_address = json_string(p.at("ip"));
  }
  for (const char* key : {"ip", "ipAddress", "ip_address", "remoteAddr"}) {
    if (rec.ip_address.empty() && j.contains(key)) rec.ip_address = json_string(j.at(key));
  }
  return true;
}

}  // namespace

std::vector<RawLogRecord> parse_stream(std::istream& in, IngestStats& stats) {
  std::vector<RawLogRecord> records;

  // Peek for array-form input; everything else is treated as NDJSON.
  int c;
  while ((c = in.peek()) != EOF && std::isspace(c)) in.get();
  if (c == '[') {
    json doc;
    try {
      in >> doc;
    } catch (const json::exception&) {
      throw std::runtime_error("input is not valid JSON");
    }
    for (const auto& j : doc) {
      RawLogRecord rec;
      if (record_from_json(j, rec)) {
        records.push_back(std::move(rec));
        ++stats.parsed;
      } else {
        ++stats.skipped;
      }
    }
    return records;
  }

  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j = json::parse(line, nullptr, false);
    RawLogRecord rec;
    if (!j.is_discarded() && record_from_json(j, rec)) {
      records.push_back(std::move(rec));
      ++stats.parsed;
    } else {
      ++stats.skipped;
    }
  }
  return records;
}

std::vector<RawLogRecord> parse_json_file(const std::string& path, IngestStats& stats) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return parse_stream(in, stats);
}

std::string synthetic_primary_ip(uint64_t seed, const std::string& user_id) {
  uint64_t h = splitmix64(seed ^ fnv1a64(user_id) ^ fnv1a64("primary-ip"));
  unsigned a = static_cast<unsigned>(h & 0xff);
  unsigned b = static_cast<unsigned>((h >> 8) & 0xff);
  unsigned c = static_cast<unsigned>((h >> 16) & 0xff);
  return "10." + std::to_string(a) + "." + std::to_string(b) + "." + std::to_string(c % 254 + 1);
}

std::string synthetic_deviation_ip(uint64_t seed, const std::string& user_id) {
  uint64_t h = splitmix64(seed ^ fnv1a64(user_id) ^ fnv1a64("deviation-ip"));
  unsigned a = static_cast<unsigned>(h & 0xff);
  unsigned b = static_cast<unsigned>((h >> 8) & 0xff);
  return "192.168." + std::to_string(a) + "." + std::to_string(b % 254 + 1);
}

std::vector<UserStream> canonicalize(const std::vector<RawLogRecord>& records,
                                     const IngestConfig& config, IngestStats& stats) {
  if (config.primary_ip_deviation_prob < 0.0 || config.primary_ip_deviation_prob > 1.0)
    throw std::invalid_argument("deviation probability must be in [0,1]");

  std::unordered_map<std::string, size_t> counts;
  for (const auto& r : records) ++counts[r.uid];
  stats.users_total = counts.size();

  // Top-N most active; ties broken by lexicographic user_id.
  std::vector<std::pair<std::string, size_t>> order(counts.begin(), counts.end());
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (config.top_n_users > 0 && order.size() > config.top_n_users)
    order.resize(config.top_n_users);

  std::unordered_map<std::string, bool> keep;
  for (const auto& [uid, n] : order) keep[uid] = true;

  std::vector<Event> events;
  events.reserve(records.size());
  std::unordered_map<std::string, bool> has_native_ip;
  for (const auto& r : records) {
    if (!keep.count(r.uid)) continue;
    Event e;
    e.user_id = r.uid;
    e.timestamp = r.timestamp;
    e.event_type = r.type;
    e.path = r.path;
    e.ip_address = r.ip_address;
    if (!r.ip_address.empty()) has_native_ip[r.uid] = true;
    events.push_back(std::move(e));
  }

  auto streams = group_by_user(std::move(events));

  // Users with no native IP anywhere get a stable synthetic primary, with a
  // per-event deterministic deviation draw keyed by (seed, user, index).
  for (auto& s : streams) {
    if (has_native_ip.count(s.user_id)) continue;
    ++stats.synthetic_users;
    std::string primary = synthetic_primary_ip(config.rng_seed, s.user_id);
    std::string deviation = synthetic_deviation_ip(config.rng_seed, s.user_id);
    uint64_t user_key = splitmix64(config.rng_seed ^ fnv1a64(s.user_id));
    for (size_t i = 0; i < s.events.size(); ++i) {
      uint64_t h = splitmix64(user_key + i);
      double u = (h >> 11) * 0x1.0p-53;
      s.events[i].ip_address = (u < config.primary_ip_deviation_prob) ? deviation : primary;
    }
  }

  stats.users_kept = streams.size();
  stats.events_kept = 0;
  for (const auto& s : streams) stats.events_kept += s.events.size();
  return streams;
}

}  // namespace ueba
