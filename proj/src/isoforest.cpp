#include "ueba/isoforest.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ueba/rng.hpp"

namespace ueba {

double average_path_length(double n) {
  if (n <= 1.0) return 0.0;
  if (n == 2.0) return 1.0;
  constexpr double euler_mascheroni = 0.5772156649015329;
  return 2.0 * (std::log(n - 1.0) + euler_mascheroni) - 2.0 * (n - 1.0) / n;
}

void IsolationForest::fit(const Matrix& data, const IsoForestConfig& config) {
  if (data.rows == 0) throw std::invalid_argument("cannot fit on empty matrix");
  n_features_ = data.cols;
  contamination_ = config.contamination;
  size_t psi = std::min(config.subsample, data.rows);
  c_norm_ = std::max(average_path_length(static_cast<double>(psi)), 1e-12);
  max_depth_ = static_cast<size_t>(
      std::ceil(std::log2(std::max<double>(2.0, static_cast<double>(psi)))));

  trees_.assign(config.n_trees, ITree{});

  auto build_one = [&](size_t t) {
    Rng rng = Rng::stream(config.rng_seed, "isoforest-tree", t);
    // subsample without replacement
    std::vector<size_t> sample;
    if (psi == data.rows) {
      sample.resize(data.rows);
      for (size_t i = 0; i < data.rows; ++i) sample[i] = i;
    } else {
      auto perm = rng.permutation(data.rows);
      sample.assign(perm.begin(), perm.begin() + static_cast<long>(psi));
    }

    ITree& tree = trees_[t];
    // recursive construction over [begin, end) of `sample`
    auto build = [&](auto&& self, size_t begin, size_t end, size_t depth) -> int32_t {
      int32_t id = static_cast<int32_t>(tree.nodes.size());
      tree.nodes.push_back(Node{});
      size_t n = end - begin;
      tree.nodes.back().size = static_cast<double>(n);
      if (n <= 1 || depth >= max_depth_) return id;

      // pick a feature with spread; give up after a few blind draws
      size_t feature = SIZE_MAX;
      double lo = 0.0, hi = 0.0;
      for (int tries = 0; tries < 8; ++tries) {
        size_t f = static_cast<size_t>(
            rng.uniform_int(0, static_cast<int64_t>(data.cols) - 1));
        lo = hi = data.at(sample[begin], f);
        for (size_t i = begin + 1; i < end; ++i) {
          lo = std::min(lo, data.at(sample[i], f));
          hi = std::max(hi, data.at(sample[i], f));
        }
        if (hi > lo) {
          feature = f;
          break;
        }
      }
      if (feature == SIZE_MAX) return id;

      double split = rng.uniform(lo, hi);
      auto mid_it = std::partition(
          sample.begin() + static_cast<long>(begin), sample.begin() + static_cast<long>(end),
          [&](size_t idx) { return data.at(idx, feature) < split; });
      size_t mid = static_cast<size_t>(mid_it - sample.begin());
      if (mid == begin || mid == end) return id;  // degenerate draw

      tree.nodes[static_cast<size_t>(id)].feature = static_cast<int32_t>(feature);
      tree.nodes[static_cast<size_t>(id)].split = split;
      int32_t l = self(self, begin, mid, depth + 1);
      int32_t r = self(self, mid, end, depth + 1);
      tree.nodes[static_cast<size_t>(id)].left = l;
      tree.nodes[static_cast<size_t>(id)].right = r;
      return id;
    };
    build(build, 0, sample.size(), 0);
  };

  if (config.parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long t = 0; t < static_cast<long>(config.n_trees); ++t)
      build_one(static_cast<size_t>(t));
  } else {
    for (size_t t = 0; t < config.n_trees; ++t) build_one(t);
  }
}

double IsolationForest::path_length(const ITree& t, const double* x) const {
  int32_t i = 0;
  double depth = 0.0;
  while (t.nodes[static_cast<size_t>(i)].feature >= 0) {
    const Node& n = t.nodes[static_cast<size_t>(i)];
    i = x[n.feature] < n.split ? n.left : n.right;
    depth += 1.0;
  }
  return depth + average_path_length(t.nodes[static_cast<size_t>(i)].size);
}

std::vector<double> IsolationForest::score(const Matrix& m) const {
  if (m.cols != n_features_) throw std::invalid_argument("feature count mismatch");
  std::vector<double> out(m.rows, 0.0);
  for (size_t r = 0; r < m.rows; ++r) {
    double sum = 0.0;
    for (const auto& t : trees_) sum += path_length(t, m.row(r));
    double mean_depth = sum / static_cast<double>(trees_.size());
    out[r] = std::pow(2.0, -mean_depth / c_norm_);
  }
  return out;
}

double IsolationForest::threshold(const std::vector<double>& scores) const {
  if (scores.empty()) return 0.5;
  std::vector<double> sorted = scores;
  std::sort(sorted.begin(), sorted.end());
  double q = 1.0 - contamination_;
  size_t rank = static_cast<size_t>(
      std::clamp(q * static_cast<double>(sorted.size() - 1), 0.0,
                 static_cast<double>(sorted.size() - 1)));
  return sorted[rank];
}

}  // namespace ueba
