#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ueba/matrix.hpp"

namespace ueba {

// Random forest classifier: bootstrap resampling, axis-aligned splits chosen
// by weighted Gini decrease over ceil(sqrt(D)) randomly drawn features, grown
// to purity with min_samples_leaf = 1, balanced class weights
// w_c = N / (2 * N_c). Per-tree RNG streams are derived from the seed, so
// parallel training produces the same forest as serial; aggregation is in
// tree-index order.

struct ForestConfig {
  size_t n_trees = 100;
  size_t min_samples_leaf = 1;
  uint64_t rng_seed = 42;
  bool parallel = false;
};

struct TreeNode {
  int32_t feature = -1;  // -1 marks a leaf
  int32_t left = -1;
  int32_t right = -1;
  double threshold = 0.0;
  double pos_fraction = 0.0;  // weighted positive share at the leaf
};

struct Tree {
  std::vector<TreeNode> nodes;
  double predict(const double* x) const;
};

class RandomForest {
public:
  // labels must contain both classes.
  void fit(const Matrix& train, const std::vector<int>& labels, const ForestConfig& config);

  std::vector<double> predict_proba(const Matrix& m) const;

  // Mean decrease in weighted Gini impurity, normalized to sum 1.
  const std::vector<double>& feature_importances() const { return importances_; }

  const std::vector<Tree>& trees() const { return trees_; }
  size_t n_features() const { return n_features_; }
  double class_weight(int cls) const { return cls == 1 ? w_pos_ : w_neg_; }

  // exposed for serialization
  void restore(std::vector<Tree> trees, std::vector<double> importances, size_t n_features,
               double w_neg, double w_pos);

private:
  std::vector<Tree> trees_;
  std::vector<double> importances_;
  size_t n_features_ = 0;
  double w_neg_ = 1.0;
  double w_pos_ = 1.0;
};

}  // namespace ueba
