#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ueba {

// One canonical log record. `path` and `ip_address` may be empty.
struct Event {
  std::string user_id;
  int64_t timestamp = 0;  // UTC seconds since epoch
  std::string event_type;
  std::string path;
  std::string ip_address;

  bool operator==(const Event&) const = default;
};

// A user's events, sorted ascending by timestamp (ties keep file order).
struct UserStream {
  std::string user_id;
  std::vector<Event> events;
};

// W consecutive events of one user, referenced by index into the stream.
struct WindowSlice {
  std::string user_id;
  size_t begin = 0;  // index of first event in the user's stream
  size_t size = 0;   // == W
  size_t seq_index = 0;
  int64_t start_time = 0;
  int64_t end_time = 0;
  int label = 0;  // 0 normal, 1 hijacked
};

struct HijackInterval {
  std::string user_id;
  int64_t start = 0;
  int64_t end = 0;  // == start + duration
};

// /24 prefix of a dotted-quad IP ("10.1.2.3" -> "10.1.2"); strings without a
// dot fall through unchanged so malformed input still buckets consistently.
inline std::string subnet24(std::string_view ip) {
  size_t pos = ip.rfind('.');
  if (pos == std::string_view::npos) return std::string(ip);
  return std::string(ip.substr(0, pos));
}

inline bool contains_ci(std::string_view haystack, std::string_view needle) {
  if (needle.empty() || haystack.size() < needle.size()) return false;
  auto lower = [](char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
  };
  for (size_t i = 0; i + needle.size() <= haystack.size(); ++i) {
    size_t j = 0;
    while (j < needle.size() && lower(haystack[i + j]) == lower(needle[j])) ++j;
    if (j == needle.size()) return true;
  }
  return false;
}

// Authentication classifiers. An attempt is any event whose type mentions
// "login"; failed attempts additionally mention "fail", everything else
// counts as success.
inline bool is_login_attempt(std::string_view type) { return contains_ci(type, "login"); }

inline bool is_login_failure(std::string_view type) {
  return is_login_attempt(type) && contains_ci(type, "fail");
}

inline bool is_login_success(std::string_view type) {
  return is_login_attempt(type) && !contains_ci(type, "fail");
}

// Penalty events: failures and security-style alerts anywhere in the history.
inline bool is_penalty(std::string_view type) {
  return contains_ci(type, "fail") || contains_ci(type, "denied") ||
         contains_ci(type, "error") || contains_ci(type, "violation");
}

inline const std::vector<std::string>& sensitive_keywords() {
  static const std::vector<std::string> kw = {"admin", "delete", "share", "permission",
                                              "public"};
  return kw;
}

inline bool is_sensitive(std::string_view type, std::string_view path) {
  for (const auto& k : sensitive_keywords()) {
    if (contains_ci(type, k) || contains_ci(path, k)) return true;
  }
  return false;
}

}  // namespace ueba
