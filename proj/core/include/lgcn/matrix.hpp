#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lgcn/errors.hpp"

namespace lgcn {

/// Dense row-major matrix of doubles.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}
  Matrix(std::size_t r, std::size_t c, std::vector<double> values) : rows(r), cols(c), data(std::move(values)) {
    detail::require(data.size() == r * c, "Matrix: value count does not match shape");
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  std::span<const double> row(std::size_t r) const { return {data.data() + r * cols, cols}; }

  std::vector<double> apply(std::span<const double> x) const {
    detail::require(x.size() == cols, "Matrix::apply: dimension mismatch");
    std::vector<double> y(rows, 0.0);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) y[r] += (*this)(r, c) * x[c];
    return y;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    detail::require(a.cols == b.rows, "Matrix product: inner dimensions differ");
    Matrix out(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
      for (std::size_t k = 0; k < a.cols; ++k)
        for (std::size_t j = 0; j < b.cols; ++j) out(i, j) += a(i, k) * b(k, j);
    return out;
  }
};

}  // namespace lgcn
