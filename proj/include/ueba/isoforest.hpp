#pragma once

#include <cstdint>
#include <vector>

#include "ueba/matrix.hpp"

namespace ueba {

// Isolation forest: random trees over subsamples isolate points; anomalous
// points sit at short average path depths. Score s(x) = 2^(-E[h(x)]/c(psi))
// lies in (0,1), higher = more anomalous. The contamination fraction is used
// only to derive a reporting threshold, never during fitting.

struct IsoForestConfig {
  size_t n_trees = 100;
  size_t subsample = 256;  // clamped to the dataset size
  double contamination = 0.1;
  uint64_t rng_seed = 42;
  bool parallel = false;
};

class IsolationForest {
public:
  void fit(const Matrix& data, const IsoForestConfig& config);
  std::vector<double> score(const Matrix& m) const;

  // (1 - contamination) quantile of the given scores.
  double threshold(const std::vector<double>& scores) const;

private:
  struct Node {
    int32_t feature = -1;  // -1 marks an external node
    int32_t left = -1;
    int32_t right = -1;
    double split = 0.0;
    double size = 0.0;  // sample count at external nodes
  };
  struct ITree {
    std::vector<Node> nodes;
  };

  double path_length(const ITree& t, const double* x) const;

  std::vector<ITree> trees_;
  size_t n_features_ = 0;
  double c_norm_ = 1.0;  // c(subsample)
  double contamination_ = 0.1;
  size_t max_depth_ = 8;
};

// Average unsuccessful-search depth of a BST with n nodes; the path-length
// normalizer.
double average_path_length(double n);

}  // namespace ueba
