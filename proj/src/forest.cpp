#include "ueba/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ueba/rng.hpp"

namespace ueba {

double Tree::predict(const double* x) const {
  int32_t i = 0;
  while (nodes[static_cast<size_t>(i)].feature >= 0) {
    const TreeNode& n = nodes[static_cast<size_t>(i)];
    i = x[n.feature] <= n.threshold ? n.left : n.right;
  }
  return nodes[static_cast<size_t>(i)].pos_fraction;
}

namespace {

struct TreeBuilder {
  const Matrix& x;
  const std::vector<int>& y;
  double w_neg, w_pos;
  size_t max_features;
  size_t min_leaf;
  Rng& rng;
  Tree tree;
  std::vector<double> importance;  // weighted impurity decrease per feature
  double root_weight = 0.0;

  std::vector<size_t> indices;  // bootstrap sample, partitioned in place

  double weight_of(size_t idx) const { return y[idx] == 1 ? w_pos : w_neg; }

  static double gini(double w_neg_sum, double w_pos_sum) {
    double w = w_neg_sum + w_pos_sum;
    if (w <= 0.0) return 0.0;
    double pn = w_neg_sum / w, pp = w_pos_sum / w;
    return 1.0 - pn * pn - pp * pp;
  }

  int32_t build(size_t begin, size_t end) {
    double wn = 0.0, wp = 0.0;
    for (size_t i = begin; i < end; ++i) {
      if (y[indices[i]] == 1)
        wp += w_pos;
      else
        wn += w_neg;
    }
    double node_weight = wn + wp;
    double node_gini = gini(wn, wp);

    int32_t id = static_cast<int32_t>(tree.nodes.size());
    tree.nodes.push_back(TreeNode{});
    tree.nodes.back().pos_fraction = node_weight > 0.0 ? wp / node_weight : 0.0;

    size_t n = end - begin;
    if (node_gini <= 0.0 || n < 2 * min_leaf || n < 2) return id;

    // candidate features: max_features distinct draws
    size_t d = x.cols;
    std::vector<size_t> feats;
    feats.reserve(max_features);
    if (max_features >= d) {
      for (size_t f = 0; f < d; ++f) feats.push_back(f);
    } else {
      while (feats.size() < max_features) {
        size_t f = static_cast<size_t>(rng.uniform_int(0, static_cast<int64_t>(d) - 1));
        if (std::find(feats.begin(), feats.end(), f) == feats.end()) feats.push_back(f);
      }
    }

    double best_decrease = 0.0;
    size_t best_feature = SIZE_MAX;
    double best_threshold = 0.0;

    std::vector<std::pair<double, size_t>> vals(n);
    for (size_t f : feats) {
      for (size_t i = 0; i < n; ++i) {
        size_t idx = indices[begin + i];
        vals[i] = {x.at(idx, f), idx};
      }
      std::sort(vals.begin(), vals.end());
      if (vals.front().first == vals.back().first) continue;

      double lwn = 0.0, lwp = 0.0;
      for (size_t i = 0; i + 1 < n; ++i) {
        if (y[vals[i].second] == 1)
          lwp += w_pos;
        else
          lwn += w_neg;
        if (vals[i].first == vals[i + 1].first) continue;
        if (i + 1 < min_leaf || n - i - 1 < min_leaf) continue;
        double rwn = wn - lwn, rwp = wp - lwp;
        double decrease = node_gini - (lwn + lwp) / node_weight * gini(lwn, lwp) -
                          (rwn + rwp) / node_weight * gini(rwn, rwp);
        if (decrease > best_decrease) {
          best_decrease = decrease;
          best_feature = f;
          best_threshold = 0.5 * (vals[i].first + vals[i + 1].first);
        }
      }
    }

    if (best_feature == SIZE_MAX || best_decrease <= 1e-15) return id;

    importance[best_feature] += node_weight / root_weight * best_decrease;

    auto mid_it = std::partition(indices.begin() + static_cast<long>(begin),
                                 indices.begin() + static_cast<long>(end),
                                 [&](size_t idx) { return x.at(idx, best_feature) <= best_threshold; });
    size_t mid = static_cast<size_t>(mid_it - indices.begin());

    tree.nodes[static_cast<size_t>(id)].feature = static_cast<int32_t>(best_feature);
    tree.nodes[static_cast<size_t>(id)].threshold = best_threshold;
    int32_t l = build(begin, mid);
    int32_t r = build(mid, end);
    tree.nodes[static_cast<size_t>(id)].left = l;
    tree.nodes[static_cast<size_t>(id)].right = r;
    return id;
  }
};

}  // namespace

void RandomForest::fit(const Matrix& train, const std::vector<int>& labels,
                       const ForestConfig& config) {
  if (train.rows == 0 || train.rows != labels.size())
    throw std::invalid_argument("training matrix and labels disagree");
  size_t n_pos = 0;
  for (int l : labels) n_pos += static_cast<size_t>(l == 1);
  size_t n_neg = labels.size() - n_pos;
  if (n_pos == 0 || n_neg == 0)
    throw std::invalid_argument("training labels contain a single class");

  n_features_ = train.cols;
  double n = static_cast<double>(labels.size());
  w_pos_ = n / (2.0 * static_cast<double>(n_pos));
  w_neg_ = n / (2.0 * static_cast<double>(n_neg));

  size_t max_features = static_cast<size_t>(
      std::ceil(std::sqrt(static_cast<double>(train.cols))));

  trees_.assign(config.n_trees, Tree{});
  std::vector<std::vector<double>> tree_importance(config.n_trees);

  auto build_one = [&](size_t t) {
    Rng rng = Rng::stream(config.rng_seed, "forest-tree", t);
    TreeBuilder b{train, labels, w_neg_, w_pos_, max_features, config.min_samples_leaf,
                  rng,   {},     {},     0.0,    {}};
    b.indices.resize(train.rows);
    for (size_t i = 0; i < train.rows; ++i)
      b.indices[i] =
          static_cast<size_t>(rng.uniform_int(0, static_cast<int64_t>(train.rows) - 1));
    b.importance.assign(train.cols, 0.0);
    for (size_t i : b.indices) b.root_weight += b.weight_of(i);
    b.build(0, b.indices.size());
    trees_[t] = std::move(b.tree);
    tree_importance[t] = std::move(b.importance);
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

  // mean decrease in impurity across trees, normalized to sum 1
  importances_.assign(train.cols, 0.0);
  for (size_t t = 0; t < config.n_trees; ++t)
    for (size_t f = 0; f < train.cols; ++f) importances_[f] += tree_importance[t][f];
  double total = std::accumulate(importances_.begin(), importances_.end(), 0.0);
  if (total > 0.0)
    for (double& v : importances_) v /= total;
}

std::vector<double> RandomForest::predict_proba(const Matrix& m) const {
  if (m.cols != n_features_) throw std::invalid_argument("feature count mismatch");
  std::vector<double> scores(m.rows, 0.0);
  for (size_t r = 0; r < m.rows; ++r) {
    double s = 0.0;
    for (const auto& t : trees_) s += t.predict(m.row(r));
    scores[r] = s / static_cast<double>(trees_.size());
  }
  return scores;
}

void RandomForest::restore(std::vector<Tree> trees, std::vector<double> importances,
                           size_t n_features, double w_neg, double w_pos) {
  trees_ = std::move(trees);
  importances_ = std::move(importances);
  n_features_ = n_features;
  w_neg_ = w_neg;
  w_pos_ = w_pos;
}

}  // namespace ueba
