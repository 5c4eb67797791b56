#pragma once

// Scalar-generic hyperboloid kernels.
//
// Every function is a template over the scalar type so the same arithmetic
// runs on plain doubles (the public geometry API) and on `ad::Var` (the
// trainable network). Points are stored as n+1 ambient coordinates
// (x0, x1..xn); tangent vectors at the origin are passed as their n spatial
// coordinates, the leading zero being implicit.
//
// The time coordinate of every produced point is recomputed as
// sqrt(beta + |spatial|^2), so outputs sit on the manifold up to the rounding
// of that one expression.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "lgcn/activation.hpp"
#include "lgcn/autodiff/tape.hpp"
#include "lgcn/errors.hpp"

namespace lgcn::kernels {

using std::asinh;
using std::cosh;
using std::exp;
using std::sinh;
using std::sqrt;
using std::tanh;
using ad::asinh;
using ad::cosh;
using ad::exp;
using ad::sinh;
using ad::sqrt;
using ad::tanh;
using ad::value_of;

/// Tangent norms below this map to the origin (and back).
inline constexpr double kZeroNorm = 1e-12;

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}
using ad::dot;

inline double arcosh(double x) { return std::acosh(std::max(x, 1.0)); }
using ad::arcosh;

inline double apply(const Activation& a, double x) { return a(x); }
inline ad::Var apply(const Activation& a, const ad::Var& x) {
  return a.kind == Activation::Kind::kRelu ? ad::relu(x) : ad::leaky_relu(x, a.slope);
}

template <class T>
std::span<const T> spatial(std::span<const T> x) {
  return x.subspan(1);
}

template <class T>
T inner(std::span<const T> x, std::span<const T> y) {
  return dot(spatial(x), spatial(y)) - x[0] * y[0];
}

/// (sqrt(beta + |s|^2), s)
template <class T>
std::vector<T> project(std::span<const T> spatial_coords, const T& beta) {
  std::vector<T> out;
  out.reserve(spatial_coords.size() + 1);
  out.push_back(sqrt(beta + dot(spatial_coords, spatial_coords)));
  out.insert(out.end(), spatial_coords.begin(), spatial_coords.end());
  return out;
}

template <class T>
std::vector<T> origin(std::size_t n, const T& beta) {
  std::vector<T> out(n + 1, T(0.0));
  out[0] = sqrt(beta);
  return out;
}

/// exp at the origin of the tangent vector (0, v).
template <class T>
std::vector<T> exp_origin(std::span<const T> v, const T& beta) {
  const T norm_sq = dot(v, v);
  if (std::sqrt(value_of(norm_sq)) < kZeroNorm) return origin<T>(v.size(), beta);
  const T norm = sqrt(norm_sq);
  const T sqrt_beta = sqrt(beta);
  const T coef = sqrt_beta * sinh(norm / sqrt_beta) / norm;
  std::vector<T> s;
  s.reserve(v.size());
  for (const auto& vi : v) s.push_back(coef * vi);
  return project<T>(s, beta);
}

/// Spatial part of log at the origin; the time component is exactly 0.
/// Uses asinh(|x_spatial|/sqrt(beta)), equal to arcosh(x0/sqrt(beta)) on the
/// manifold but without the cancellation near the origin.
template <class T>
std::vector<T> log_origin(std::span<const T> x, const T& beta) {
  const auto s = spatial(x);
  const T norm_sq = dot(s, s);
  if (std::sqrt(value_of(norm_sq)) < kZeroNorm) return std::vector<T>(s.size(), T(0.0));
  const T norm = sqrt(norm_sq);
  const T sqrt_beta = sqrt(beta);
  const T coef = sqrt_beta * asinh(norm / sqrt_beta) / norm;
  std::vector<T> out;
  out.reserve(s.size());
  for (const auto& si : s) out.push_back(coef * si);
  return out;
}

template <class T>
T sq_lorentz_distance(std::span<const T> x, std::span<const T> y, const T& beta) {
  return T(-2.0) * beta - T(2.0) * inner(x, y);
}

template <class T>
T distance(std::span<const T> x, std::span<const T> y, const T& beta) {
  return sqrt(beta) * arcosh(-inner(x, y) / beta);
}

/// Row-major `rows x cols` matrix times a vector.
template <class T>
std::vector<T> matvec(std::span<const T> matrix, std::size_t rows, std::size_t cols, std::span<const T> v) {
  detail::require(matrix.size() == rows * cols && v.size() == cols, "matvec: dimension mismatch");
  std::vector<T> out;
  out.reserve(rows);
  for (std::size_t r = 0; r < rows; ++r) out.push_back(dot(matrix.subspan(r * cols, cols), v));
  return out;
}

/// Lorentzian matrix-vector product: exp_0(0, M log_0(x)_spatial).
template <class T>
std::vector<T> lorentz_matvec(std::span<const T> matrix, std::size_t rows, std::size_t cols, std::span<const T> x,
                              const T& beta) {
  detail::require(x.size() == cols + 1, "lorentz_matvec: point dimension does not match matrix columns");
  const auto v = log_origin(x, beta);
  const auto mv = matvec<T>(matrix, rows, cols, v);
  return exp_origin<T>(mv, beta);
}

template <class T>
std::vector<T> change_curvature(std::span<const T> x, const T& beta_from, const T& beta_to) {
  const auto v = log_origin(x, beta_from);
  return exp_origin<T>(v, beta_to);
}

template <class T>
std::vector<T> pointwise(const Activation& act, std::span<const T> x, const T& beta) {
  auto v = log_origin(x, beta);
  for (auto& vi : v) vi = apply(act, vi);
  return exp_origin<T>(v, beta);
}

/// Closed-form minimiser of sum_j w_j d_L^2(x_j, c):
/// c = sqrt(beta) s / sqrt(|<s, s>_L|), s = sum_j w_j x_j.
template <class T>
std::vector<T> centroid(std::span<const std::span<const T>> points, std::span<const T> weights, const T& beta) {
  detail::require(!points.empty(), "centroid: empty point set");
  detail::require(points.size() == weights.size(), "centroid: point/weight count mismatch");
  const std::size_t dim = points.front().size();
  std::vector<T> column(points.size());
  std::vector<T> s(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    for (std::size_t j = 0; j < points.size(); ++j) column[j] = points[j][c];
    s[c] = dot(std::span<const T>(weights), std::span<const T>(column));
  }
  const std::span<const T> ss(s);
  const T q = s[0] * s[0] - dot(spatial(ss), spatial(ss));
  if (!(value_of(q) > 1e-15))
    throw DegenerateConfiguration("centroid: |<s,s>_L| vanished; inputs are not on the upper hyperboloid");
  const T scale = sqrt(beta) / sqrt(q);
  std::vector<T> c_spatial;
  c_spatial.reserve(dim - 1);
  for (std::size_t c = 1; c < dim; ++c) c_spatial.push_back(scale * s[c]);
  return project<T>(c_spatial, beta);
}

}  // namespace lgcn::kernels
