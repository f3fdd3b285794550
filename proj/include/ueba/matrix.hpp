#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace ueba {

// Dense row-major numeric table.
struct Matrix {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<double> v;

  Matrix() = default;
  Matrix(size_t r, size_t c) : rows(r), cols(c), v(r * c, 0.0) {}

  double& at(size_t r, size_t c) { return v[r * cols + c]; }
  double at(size_t r, size_t c) const { return v[r * cols + c]; }
  const double* row(size_t r) const { return v.data() + r * cols; }
  double* row(size_t r) { return v.data() + r * cols; }

  Matrix select_columns(const std::vector<size_t>& idx) const {
    Matrix out(rows, idx.size());
    for (size_t r = 0; r < rows; ++r)
      for (size_t j = 0; j < idx.size(); ++j) out.at(r, j) = at(r, idx[j]);
    return out;
  }

  Matrix select_rows(const std::vector<size_t>& idx) const {
    Matrix out(idx.size(), cols);
    for (size_t j = 0; j < idx.size(); ++j)
      for (size_t c = 0; c < cols; ++c) out.at(j, c) = at(idx[j], c);
    return out;
  }
};

template <typename T>
std::vector<T> select_values(const std::vector<T>& v, const std::vector<size_t>& idx) {
  std::vector<T> out;
  out.reserve(idx.size());
  for (size_t i : idx) {
    if (i >= v.size()) throw std::out_of_range("index out of range");
    out.push_back(v[i]);
  }
  return out;
}

}  // namespace ueba
