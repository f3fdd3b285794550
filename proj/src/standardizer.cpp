#include "ueba/standardizer.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

namespace ueba {

void Standardizer::fit(const Matrix& train) {
  if (train.rows == 0) throw std::invalid_argument("cannot fit standardizer on empty matrix");
  mean_.assign(train.cols, 0.0);
  std_.assign(train.cols, 0.0);
  constant_.clear();

  for (size_t r = 0; r < train.rows; ++r)
    for (size_t c = 0; c < train.cols; ++c) mean_[c] += train.at(r, c);
  for (size_t c = 0; c < train.cols; ++c) mean_[c] /= static_cast<double>(train.rows);

  for (size_t r = 0; r < train.rows; ++r)
    for (size_t c = 0; c < train.cols; ++c) {
      double d = train.at(r, c) - mean_[c];
      std_[c] += d * d;
    }
  for (size_t c = 0; c < train.cols; ++c) {
    std_[c] = std::sqrt(std_[c] / static_cast<double>(train.rows));
    if (std_[c] < 1e-12) {
      std_[c] = 1.0;
      constant_.push_back(c);
    }
  }
  if (!constant_.empty())
    std::cerr << "standardizer: " << constant_.size()
              << " constant column(s); transformed to zeros\n";
}

Matrix Standardizer::transform(const Matrix& m) const {
  if (m.cols != mean_.size())
    throw std::invalid_argument("standardizer column count mismatch");
  Matrix out(m.rows, m.cols);
  for (size_t r = 0; r < m.rows; ++r)
    for (size_t c = 0; c < m.cols; ++c)
      out.at(r, c) = (m.at(r, c) - mean_[c]) / std_[c];
  return out;
}

}  // namespace ueba
