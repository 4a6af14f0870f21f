#pragma once

#include <cstddef>
#include <vector>

namespace msie {

// Dense row-major matrix of doubles. Deliberately minimal: the pipeline only
// needs storage plus the few products implemented in neural.cpp.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  double* row(std::size_t i) { return data.data() + i * cols; }
  const double* row(std::size_t i) const { return data.data() + i * cols; }

  bool empty() const { return rows == 0 || cols == 0; }

  bool operator==(const Matrix& o) const {
    return rows == o.rows && cols == o.cols && data == o.data;
  }
};

// Horizontal concatenation, skipping zero-column blocks.
Matrix hcat(const std::vector<const Matrix*>& blocks);

}  // namespace msie
