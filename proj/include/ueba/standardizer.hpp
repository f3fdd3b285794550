#pragma once

#include <vector>

#include "ueba/matrix.hpp"

namespace ueba {

// Per-feature zero-mean unit-variance scaling. Statistics come from the
// training rows only; applying the same transform to test data keeps the two
// splits on one scale without leaking test information. Population variance;
// constant columns keep std 1 so they map to all zeros.
class Standardizer {
public:
  void fit(const Matrix& train);
  Matrix transform(const Matrix& m) const;

  const std::vector<double>& means() const { return mean_; }
  const std::vector<double>& stds() const { return std_; }
  const std::vector<size_t>& constant_columns() const { return constant_; }

  // for deserialization
  void restore(std::vector<double> means, std::vector<double> stds) {
    mean_ = std::move(means);
    std_ = std::move(stds);
    constant_.clear();
  }

private:
  std::vector<double> mean_;
  std::vector<double> std_;
  std::vector<size_t> constant_;
};

}  // namespace ueba
