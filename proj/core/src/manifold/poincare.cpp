#include "lgcn/manifold/poincare.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lgcn/errors.hpp"

namespace lgcn {
namespace {

double norm(std::span<const double> v) { return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0)); }

std::vector<double> scaled(std::span<const double> v, double s) {
  std::vector<double> out(v.begin(), v.end());
  for (auto& x : out) x *= s;
  return out;
}

}  // namespace

BallPoint BallPoint::from_coords(std::vector<double> coords, double alpha) {
  detail::require(alpha > 0.0 && std::isfinite(alpha), "BallPoint: alpha must be positive");
  detail::require(!coords.empty(), "BallPoint: dimension must be >= 1");
  const double n = norm(coords);
  if (!(alpha * n * n < 1.0)) throw DomainError("BallPoint: point on or beyond the ball boundary");
  return BallPoint(std::move(coords), alpha);
}

BallPoint BallPoint::origin(std::size_t n, double alpha) { return from_coords(std::vector<double>(n, 0.0), alpha); }

BallPoint ball_exp_origin(std::span<const double> v, double alpha) {
  for (double x : v) detail::require(std::isfinite(x), "ball_exp_origin: non-finite input");
  const double sa = std::sqrt(alpha);
  const double n = norm(v);
  if (n == 0.0) return BallPoint::origin(v.size(), alpha);
  const double radius = std::min(std::tanh(sa * n), kBallEdge);
  return BallPoint::from_coords(scaled(v, radius / (sa * n)), alpha);
}

std::vector<double> ball_log_origin(const BallPoint& y) {
  const double sa = std::sqrt(y.alpha());
  const double n = norm(y.coords());
  if (n == 0.0) return std::vector<double>(y.dim(), 0.0);
  const double r = std::min(sa * n, kBallEdge);
  return scaled(y.coords(), std::atanh(r) / (sa * n));
}

BallPoint hyperboloid_to_ball(const HyperPoint& x) {
  const double sb = x.curvature().sqrt_beta();
  return BallPoint::from_coords(scaled(x.spatial(), sb / (sb + x.time())), 1.0 / x.beta());
}

HyperPoint ball_to_hyperboloid(const BallPoint& y) {
  const double a = y.alpha();
  const double sa = std::sqrt(a);
  const double n2 = std::pow(norm(y.coords()), 2);
  const double denom = 1.0 - a * n2;
  if (!(denom > 0.0)) throw DomainError("ball_to_hyperboloid: point on the ball boundary");
  std::vector<double> coords;
  coords.reserve(y.dim() + 1);
  coords.push_back((1.0 / sa + sa * n2) / denom);
  for (double c : y.coords()) coords.push_back(2.0 * c / denom);
  return HyperPoint::from_coords(std::move(coords), Curvature(1.0 / a));
}

BallPoint mobius_matvec(const Matrix& m, const BallPoint& y) {
  detail::require(m.cols == y.dim(), "mobius_matvec: dimension mismatch");
  const double a = y.alpha();
  const double sa = std::sqrt(a);
  const double ny = norm(y.coords());
  if (ny == 0.0) return BallPoint::origin(m.rows, a);
  const auto my = m.apply(y.coords());
  const double nmy = norm(my);
  if (nmy == 0.0) return BallPoint::origin(m.rows, a);
  const double radius = std::min(std::tanh(nmy / ny * std::atanh(std::min(sa * ny, kBallEdge))), kBallEdge) / sa;
  return BallPoint::from_coords(scaled(my, radius / nmy), a);
}

BallPoint mobius_pointwise(const Activation& sigma, const BallPoint& y) {
  auto v = ball_log_origin(y);
  for (auto& x : v) x = sigma(x);
  return ball_exp_origin(v, y.alpha());
}

}  // namespace lgcn
