#include "lgcn/manifold/hyperboloid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lgcn/errors.hpp"
#include "lgcn/manifold/kernels.hpp"

namespace lgcn {

Curvature::Curvature(double beta) : beta_(beta), sqrt_beta_(std::sqrt(beta)) {
  detail::require(beta > 0.0 && std::isfinite(beta), "Curvature: beta must be positive and finite");
}

double manifold_residual(std::span<const double> coords, double beta) {
  return std::abs(kernels::inner(coords, coords) + beta);
}

HyperPoint HyperPoint::from_coords(std::vector<double> coords, Curvature curvature) {
  detail::require(coords.size() >= 2, "HyperPoint: need at least 2 coordinates");
  for (double c : coords) detail::require(std::isfinite(c), "HyperPoint: non-finite coordinate");
  detail::require(coords[0] > 0.0, "HyperPoint: x0 must be positive (upper sheet)");
  const double tol = kManifoldTolerance * std::max(1.0, coords[0] * coords[0]);
  const double residual = manifold_residual(coords, curvature.beta());
  if (residual > tol)
    throw ContractViolation("HyperPoint: off-manifold point, |<x,x>_L + beta| = " + std::to_string(residual));
  return HyperPoint(std::move(coords), curvature);
}

HyperPoint HyperPoint::from_coords_unchecked(std::vector<double> coords, Curvature curvature) {
  return HyperPoint(std::move(coords), curvature);
}

HyperPoint HyperPoint::origin(std::size_t n, Curvature curvature) {
  detail::require(n >= 1, "HyperPoint::origin: dimension must be >= 1");
  return HyperPoint(kernels::origin<double>(n, curvature.beta()), curvature);
}

TangentVector TangentVector::from_spatial(std::vector<double> spatial) {
  detail::require(!spatial.empty(), "TangentVector: dimension must be >= 1");
  spatial.insert(spatial.begin(), 0.0);
  return TangentVector(std::move(spatial));
}

TangentVector TangentVector::from_coords(std::vector<double> coords) {
  detail::require(coords.size() >= 2, "TangentVector: need at least 2 coordinates");
  detail::require(coords[0] == 0.0, "TangentVector: time coordinate must be exactly 0 at the origin");
  return TangentVector(std::move(coords));
}

TangentVector TangentVector::zero(std::size_t n) { return from_spatial(std::vector<double>(n, 0.0)); }

double lorentz_inner(std::span<const double> x, std::span<const double> y) {
  detail::require(x.size() == y.size() && x.size() >= 2, "lorentz_inner: vectors must have equal length >= 2");
  return kernels::inner(x, y);
}

double lorentz_norm(std::span<const double> v, NormKind kind) {
  const double ip = lorentz_inner(v, v);
  if (ip < 0.0) {
    if (kind == NormKind::kStrict) throw DomainError("lorentz_norm: <v,v>_L < 0 (time-like vector)");
    return std::sqrt(-ip);
  }
  return std::sqrt(ip);
}

HyperPoint exp_origin(const TangentVector& v, Curvature curvature) {
  return HyperPoint::from_coords_unchecked(kernels::exp_origin(v.spatial(), curvature.beta()), curvature);
}

TangentVector log_origin(const HyperPoint& y) {
  return TangentVector::from_spatial(kernels::log_origin(y.coords(), y.beta()));
}

double distance(const HyperPoint& x, const HyperPoint& y) {
  detail::require(x.curvature() == y.curvature(), "distance: points on different manifolds");
  detail::require(x.dim() == y.dim(), "distance: dimension mismatch");
  // <x-y, x-y>_L = 4 beta sinh^2(d / (2 sqrt beta)); the difference form is
  // exact for coincident points, unlike arcosh(-<x,y>_L / beta).
  const auto a = x.coords();
  const auto b = y.coords();
  double sq = -(a[0] - b[0]) * (a[0] - b[0]);
  for (std::size_t i = 1; i < a.size(); ++i) sq += (a[i] - b[i]) * (a[i] - b[i]);
  const double sqrt_beta = std::sqrt(x.beta());
  return 2.0 * sqrt_beta * std::asinh(std::sqrt(std::max(sq, 0.0)) / (2.0 * sqrt_beta));
}

double sq_lorentz_distance(const HyperPoint& x, const HyperPoint& y) {
  detail::require(x.curvature() == y.curvature(), "sq_lorentz_distance: points on different manifolds");
  detail::require(x.dim() == y.dim(), "sq_lorentz_distance: dimension mismatch");
  return kernels::sq_lorentz_distance(x.coords(), y.coords(), x.beta());
}

HyperPoint project_to_manifold(std::span<const double> raw, Curvature curvature) {
  detail::require(raw.size() >= 2, "project_to_manifold: need at least 2 coordinates");
  for (double c : raw.subspan(1)) detail::require(std::isfinite(c), "project_to_manifold: non-finite input");
  return HyperPoint::from_coords_unchecked(kernels::project(raw.subspan(1), curvature.beta()), curvature);
}

}  // namespace lgcn
