#pragma once

// Poincare ball D^{n,alpha} = { y in R^n : alpha |y|^2 < 1 } and its
// isometry with the hyperboloid (alpha = 1/beta). Kept independent of the
// hyperboloid kernels so it can serve as a cross-model oracle.

#include <cstddef>
#include <span>
#include <vector>

#include "lgcn/activation.hpp"
#include "lgcn/manifold/hyperboloid.hpp"
#include "lgcn/matrix.hpp"

namespace lgcn {

class BallPoint {
 public:
  /// Throws DomainError unless alpha |y|^2 < 1.
  static BallPoint from_coords(std::vector<double> coords, double alpha);
  static BallPoint origin(std::size_t n, double alpha);

  std::size_t dim() const noexcept { return coords_.size(); }
  std::span<const double> coords() const noexcept { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }
  double alpha() const noexcept { return alpha_; }

 private:
  BallPoint(std::vector<double> coords, double alpha) : coords_(std::move(coords)), alpha_(alpha) {}
  std::vector<double> coords_;
  double alpha_;
};

/// Upper bound applied to tanh outputs and arctanh arguments.
inline constexpr double kBallEdge = 1.0 - 1e-15;

BallPoint ball_exp_origin(std::span<const double> v, double alpha);
std::vector<double> ball_log_origin(const BallPoint& y);

/// sqrt(beta) x_spatial / (sqrt(beta) + x0), with alpha = 1/beta.
BallPoint hyperboloid_to_ball(const HyperPoint& x);
/// (1/sqrt(alpha) + sqrt(alpha)|y|^2, 2y) / (1 - alpha|y|^2), with beta = 1/alpha.
HyperPoint ball_to_hyperboloid(const BallPoint& y);

/// Mobius matrix-vector product
/// (1/sqrt(a)) tanh(|My|/|y| artanh(sqrt(a)|y|)) My/|My|; origin when y = 0 or My = 0.
BallPoint mobius_matvec(const Matrix& m, const BallPoint& y);
/// exp_0(sigma(log_0(y))).
BallPoint mobius_pointwise(const Activation& sigma, const BallPoint& y);

}  // namespace lgcn
