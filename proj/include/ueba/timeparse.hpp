#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ueba {

// Timestamps are UTC seconds since the Unix epoch, stored as int64_t.
// Calendar math is done with the days-from-civil algorithm rather than the C
// library so results never depend on the host timezone database.

constexpr int64_t kSecondsPerDay = 86400;
constexpr int64_t kSecondsPerHour = 3600;

inline int64_t days_from_civil(int y, unsigned m, unsigned d) {
  y -= m <= 2;
  const int era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return static_cast<int64_t>(era) * 146097 + static_cast<int64_t>(doe) - 719468;
}

inline void civil_from_days(int64_t z, int& y, unsigned& m, unsigned& d) {
  z += 719468;
  const int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const int64_t yy = static_cast<int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp + (mp < 10 ? 3 : -9);
  y = static_cast<int>(yy + (m <= 2));
}

// Day index since epoch; the calendar-date key used for per-day counts.
inline int64_t day_of(int64_t ts) {
  return ts >= 0 ? ts / kSecondsPerDay : (ts - kSecondsPerDay + 1) / kSecondsPerDay;
}

inline int hour_of(int64_t ts) {
  int64_t sec = ts - day_of(ts) * kSecondsPerDay;
  return static_cast<int>(sec / kSecondsPerHour);
}

// 0 = Sunday .. 6 = Saturday (1970-01-01 was a Thursday).
inline int weekday_of(int64_t ts) {
  int64_t d = day_of(ts);
  return static_cast<int>(((d % 7) + 11) % 7);
}

// Accepts "YYYY-MM-DD[T ]HH:MM:SS[.fff][Z|±HH[:MM]]" or a bare integer of
// epoch seconds. Fractional seconds are truncated; offsets are folded to UTC.
std::optional<int64_t> parse_timestamp(std::string_view s);

// ISO-8601 UTC, "YYYY-MM-DDTHH:MM:SSZ". Canonical on-disk form.
std::string format_timestamp(int64_t ts);

}  // namespace ueba
