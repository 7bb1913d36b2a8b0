#pragma once

#include <cstddef>
#include <vector>

namespace tfree {

// Dense row-major matrix of doubles. Storage is double throughout so that
// accumulation order is the only source of rounding; checkpoints quantize
// to 32-bit floats on disk.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  double* row(std::size_t r) { return data.data() + r * cols; }
  const double* row(std::size_t r) const { return data.data() + r * cols; }

  bool operator==(const Matrix& o) const = default;
};

}  // namespace tfree
