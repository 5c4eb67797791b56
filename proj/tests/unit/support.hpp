#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <span>
#include <vector>

#include "lgcn/manifold/hyperboloid.hpp"
#include "lgcn/matrix.hpp"
#include "lgcn/util/rng.hpp"

namespace lgcn::test {

/// Oracle values from tests/oracles/scalar_oracles.py.
namespace oracle {
inline constexpr double kCosh1 = 1.5430806348152437785;
inline constexpr double kSinh1 = 1.1752011936438014569;
inline constexpr double kTwoCosh1 = 3.086161269630487557;
inline constexpr double kTwoSinh1 = 2.3504023872876029138;
inline constexpr double kSqrt2 = 1.4142135623730950488;
inline constexpr double kSqDistance = 1.086161269630487557;
inline constexpr double kSqrt26 = 5.09901951359278483;
inline constexpr double kTanh1 = 0.76159415595576488812;
inline constexpr double kTanhHalf = 0.4621171572600097585;
inline constexpr double kFermiDiracSame = 0.88079707797788244406;
inline constexpr double kDArcoshAtCosh1 = 0.85091812823932154513;
inline constexpr double kBcePerfect = 1.0000000500000033333e-7;
inline constexpr double kDistortionTwoHalf = 4.78125;
}  // namespace oracle

using Gen = Rng;
using lgcn::uniform;


inline std::vector<double> random_vector(Gen& g, std::size_t n, double scale = 1.0) {
  std::normal_distribution<double> d(0.0, scale);
  std::vector<double> v(n);
  for (auto& x : v) x = d(g);
  return v;
}

/// Random tangent vector with Euclidean norm in [0, max_norm].
inline std::vector<double> random_tangent(Gen& g, std::size_t n, double max_norm) {
  auto v = random_vector(g, n);
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  const double target = uniform(g, 0.0, max_norm);
  for (auto& x : v) x *= norm > 0 ? target / norm : 0.0;
  return v;
}

inline HyperPoint random_point(Gen& g, std::size_t n, Curvature c, double max_radius = 3.0) {
  return exp_origin(TangentVector::from_spatial(random_tangent(g, n, max_radius)), c);
}

inline Matrix random_matrix(Gen& g, std::size_t rows, std::size_t cols, double scale = 1.0) {
  return Matrix(rows, cols, random_vector(g, rows * cols, scale / std::sqrt(static_cast<double>(cols))));
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double norm(std::span<const double> a) {
  double s = 0.0;
  for (double x : a) s += x * x;
  return std::sqrt(s);
}

/// max_i |a_i - b_i| / max(|b|_inf, 1e-12)
inline double rel_err(std::span<const double> a, std::span<const double> b) {
  double scale = 1e-12;
  for (double x : b) scale = std::max(scale, std::abs(x));
  return max_abs_diff(a, b) / scale;
}

/// |a - b| / max(|a|, |b|, 1e-8)
inline double rel_err(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-8}); }

}  // namespace lgcn::test
