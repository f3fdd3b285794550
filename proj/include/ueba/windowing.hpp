#pragma once

#include <vector>

#include "ueba/event.hpp"

namespace ueba {

// Fixed-count sliding windows: starts at 0, S, 2S, ... while a full window of
// W events fits. A user with n events yields floor((n-W)/S)+1 windows when
// n >= W and none otherwise.
std::vector<WindowSlice> slide_windows(const UserStream& stream, size_t window_size,
                                       size_t step);

// Convenience over a set of streams; output ordered by (user_id, seq_index).
std::vector<WindowSlice> slide_windows_all(const std::vector<UserStream>& streams,
                                           size_t window_size, size_t step);

// label = 1 iff the window's user matches and the closed time ranges
// intersect; touching at a single instant counts as overlap.
void label_windows(std::vector<WindowSlice>& windows,
                   const std::vector<HijackInterval>& intervals);

}  // namespace ueba
