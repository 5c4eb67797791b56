#pragma once

// Hyperboloid model H^{n,beta} = { x in R^{n+1} : <x,x>_L = -beta, x0 > 0 },
// curvature -1/beta.

#include <cstddef>
#include <span>
#include <vector>

namespace lgcn {

/// Positive curvature scale beta (sectional curvature -1/beta).
class Curvature {
 public:
  explicit Curvature(double beta);

  double beta() const noexcept { return beta_; }
  double sqrt_beta() const noexcept { return sqrt_beta_; }

  friend bool operator==(const Curvature& a, const Curvature& b) noexcept { return a.beta_ == b.beta_; }

 private:
  double beta_;
  double sqrt_beta_;
};

/// Tolerance of the membership check |<x,x>_L + beta| <= tol * max(1, x0^2).
/// The relative form accounts for the cancellation in <x,x>_L far from the origin.
inline constexpr double kManifoldTolerance = 1e-9;

/// |<x,x>_L + beta|
double manifold_residual(std::span<const double> coords, double beta);

class HyperPoint {
 public:
  /// Validates the manifold invariant; throws ContractViolation otherwise.
  static HyperPoint from_coords(std::vector<double> coords, Curvature curvature);
  /// Trusts the caller; used by operations whose outputs are on-manifold by construction.
  static HyperPoint from_coords_unchecked(std::vector<double> coords, Curvature curvature);
  static HyperPoint origin(std::size_t n, Curvature curvature);

  /// Manifold dimension n (n + 1 stored coordinates).
  std::size_t dim() const noexcept { return coords_.size() - 1; }
  std::span<const double> coords() const noexcept { return coords_; }
  std::span<const double> spatial() const noexcept { return std::span<const double>(coords_).subspan(1); }
  double time() const noexcept { return coords_[0]; }
  double operator[](std::size_t i) const { return coords_[i]; }
  const Curvature& curvature() const noexcept { return curvature_; }
  double beta() const noexcept { return curvature_.beta(); }

 private:
  HyperPoint(std::vector<double> coords, Curvature curvature) : coords_(std::move(coords)), curvature_(curvature) {}

  std::vector<double> coords_;
  Curvature curvature_;
};

/// Vector in the tangent space at the origin. The time coordinate is exactly 0.
class TangentVector {
 public:
  static TangentVector from_spatial(std::vector<double> spatial);
  /// Requires coords[0] == 0.
  static TangentVector from_coords(std::vector<double> coords);
  static TangentVector zero(std::size_t n);

  std::size_t dim() const noexcept { return coords_.size() - 1; }
  std::span<const double> coords() const noexcept { return coords_; }
  std::span<const double> spatial() const noexcept { return std::span<const double>(coords_).subspan(1); }
  double operator[](std::size_t i) const { return coords_[i]; }

 private:
  explicit TangentVector(std::vector<double> coords) : coords_(std::move(coords)) {}
  std::vector<double> coords_;
};

enum class NormKind {
  kStrict,   ///< sqrt(<v,v>_L); DomainError if <v,v>_L < 0
  kModulus,  ///< sqrt(|<v,v>_L|)
};

/// -x0*y0 + sum_{i>=1} x_i*y_i
double lorentz_inner(std::span<const double> x, std::span<const double> y);
double lorentz_norm(std::span<const double> v, NormKind kind = NormKind::kStrict);

HyperPoint exp_origin(const TangentVector& v, Curvature curvature);
/// Zero vector at the origin (continuity extension).
TangentVector log_origin(const HyperPoint& y);

/// Intrinsic distance sqrt(beta) * arcosh(-<x,y>_L / beta), argument clamped to >= 1.
double distance(const HyperPoint& x, const HyperPoint& y);
/// -2 beta - 2 <x,y>_L
double sq_lorentz_distance(const HyperPoint& x, const HyperPoint& y);

/// Keeps the spatial coordinates and recomputes x0 = sqrt(beta + |spatial|^2).
HyperPoint project_to_manifold(std::span<const double> raw, Curvature curvature);

}  // namespace lgcn
