#include "ueba/timeparse.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

namespace ueba {

namespace {

bool parse_uint(std::string_view s, size_t& pos, int digits, int& out) {
  if (pos + digits > s.size()) return false;
  int v = 0;
  for (int i = 0; i < digits; ++i) {
    char c = s[pos + i];
    if (c < '0' || c > '9') return false;
    v = v * 10 + (c - '0');
  }
  pos += static_cast<size_t>(digits);
  out = v;
  return true;
}

}  // namespace

std::optional<int64_t> parse_timestamp(std::string_view s) {
  // trim
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) return std::nullopt;

  // bare epoch seconds
  bool all_digits = true;
  for (char c : s.substr(s[0] == '-' ? 1 : 0)) {
    if (c < '0' || c > '9') {
      all_digits = false;
      break;
    }
  }
  if (all_digits && s.size() > (s[0] == '-' ? 1u : 0u)) {
    int64_t v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec == std::errc() && res.ptr == s.data() + s.size()) return v;
    return std::nullopt;
  }

  size_t pos = 0;
  int y, mo, d, h, mi, sec;
  if (!parse_uint(s, pos, 4, y)) return std::nullopt;
  if (pos >= s.size() || s[pos] != '-') return std::nullopt;
  ++pos;
  if (!parse_uint(s, pos, 2, mo)) return std::nullopt;
  if (pos >= s.size() || s[pos] != '-') return std::nullopt;
  ++pos;
  if (!parse_uint(s, pos, 2, d)) return std::nullopt;
  if (pos >= s.size() || (s[pos] != 'T' && s[pos] != ' ')) return std::nullopt;
  ++pos;
  if (!parse_uint(s, pos, 2, h)) return std::nullopt;
  if (pos >= s.size() || s[pos] != ':') return std::nullopt;
  ++pos;
  if (!parse_uint(s, pos, 2, mi)) return std::nullopt;
  if (pos >= s.size() || s[pos] != ':') return std::nullopt;
  ++pos;
  if (!parse_uint(s, pos, 2, sec)) return std::nullopt;

  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || sec > 60) return std::nullopt;

  // fractional seconds: truncate
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
  }

  int64_t offset = 0;
  if (pos < s.size()) {
    char c = s[pos];
    if (c == 'Z' || c == 'z') {
      ++pos;
    } else if (c == '+' || c == '-') {
      int sign = (c == '-') ? -1 : 1;
      ++pos;
      int oh = 0, om = 0;
      if (!parse_uint(s, pos, 2, oh)) return std::nullopt;
      if (pos < s.size() && s[pos] == ':') ++pos;
      if (pos < s.size()) {
        if (!parse_uint(s, pos, 2, om)) return std::nullopt;
      }
      offset = sign * (oh * 3600 + om * 60);
    }
  }
  if (pos != s.size()) return std::nullopt;

  int64_t days = days_from_civil(y, static_cast<unsigned>(mo), static_cast<unsigned>(d));
  int64_t ts = days * kSecondsPerDay + h * 3600 + mi * 60 + sec;
  return ts - offset;
}

std::string format_timestamp(int64_t ts) {
  int y;
  unsigned mo, d;
  civil_from_days(day_of(ts), y, mo, d);
  int64_t rem = ts - day_of(ts) * kSecondsPerDay;
  int h = static_cast<int>(rem / 3600);
  int mi = static_cast<int>((rem % 3600) / 60);
  int sec = static_cast<int>(rem % 60);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02dZ", y, mo, d, h, mi, sec);
  return buf;
}

}  // namespace ueba
