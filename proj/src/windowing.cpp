#include "ueba/windowing.hpp"

#include <algorithm>
#include <stdexcept>

namespace ueba {

std::vector<WindowSlice> slide_windows(const UserStream& stream, size_t window_size,
                                       size_t step) {
  if (window_size < 2) throw std::invalid_argument("window size must be >= 2");
  if (step < 1 || step > window_size)
    throw std::invalid_argument("step must be in [1, window size]");

  std::vector<WindowSlice> out;
  size_t n = stream.events.size();
  if (n < window_size) return out;

  size_t count = (n - window_size) / step + 1;
  out.reserve(count);
  for (size_t k = 0; k < count; ++k) {
    size_t begin = k * step;
    WindowSlice w;
    w.user_id = stream.user_id;
    w.begin = begin;
    w.size = window_size;
    w.seq_index = k;
    w.start_time = stream.events[begin].timestamp;
    w.end_time = stream.events[begin + window_size - 1].timestamp;
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<WindowSlice> slide_windows_all(const std::vector<UserStream>& streams,
                                           size_t window_size, size_t step) {
  std::vector<WindowSlice> all;
  for (const auto& s : streams) {
    auto ws = slide_windows(s, window_size, step);
    all.insert(all.end(), ws.begin(), ws.end());
  }
  std::sort(all.begin(), all.end(), [](const WindowSlice& a, const WindowSlice& b) {
    if (a.user_id != b.user_id) return a.user_id < b.user_id;
    return a.seq_index < b.seq_index;
  });
  return all;
}

void label_windows(std::vector<WindowSlice>& windows,
                   const std::vector<HijackInterval>& intervals) {
  for (auto& w : windows) {
    w.label = 0;
    for (const auto& iv : intervals) {
      if (iv.user_id != w.user_id) continue;
      if (w.start_time <= iv.end && iv.start <= w.end_time) {
        w.label = 1;
        break;
      }
    }
  }
}

}  // namespace ueba
