#pragma once

// Test-only reference implementation of the 42 trust features. For every
// window it rebuilds the user's history by filtering the raw event list
// (everything strictly before the window start) and evaluates each feature
// directly from its definition — no accumulators, no shared state with the
// library path. O(n^2) per user and deliberately so.

#include <array>
#include <vector>

#include "ueba/event.hpp"
#include "ueba/features.hpp"

namespace oracle {

std::vector<std::array<double, 42>> trust_features(
    const ueba::UserStream& stream, const std::vector<ueba::WindowSlice>& windows,
    const ueba::FeaturizeConfig& config);

// brute-force metric oracles
double roc_auc_pairs(const std::vector<double>& scores, const std::vector<int>& labels);
double pr_auc_sweep(const std::vector<double>& scores, const std::vector<int>& labels);

}  // namespace oracle
