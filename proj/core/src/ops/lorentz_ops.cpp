#include "lgcn/ops/lorentz_ops.hpp"

#include <algorithm>
#include <cmath>

#include "lgcn/errors.hpp"
#include "lgcn/manifold/kernels.hpp"

namespace lgcn {

HyperPoint lift_euclidean(std::span<const double> h, Curvature curvature) {
  for (double x : h) detail::require(std::isfinite(x), "lift_euclidean: non-finite feature");
  return exp_origin(TangentVector::from_spatial({h.begin(), h.end()}), curvature);
}

HyperPoint change_curvature(const HyperPoint& x, Curvature target) {
  if (x.curvature() == target) return x;
  return exp_origin(log_origin(x), target);
}

HyperPoint lorentz_matvec(const Matrix& m, const HyperPoint& x) {
  detail::require(m.cols == x.dim(), "lorentz_matvec: matrix columns must equal the point dimension");
  for (double v : m.data) detail::require(std::isfinite(v), "lorentz_matvec: non-finite matrix entry");
  const auto v = log_origin(x);
  const auto mv = m.apply(v.spatial());
  return exp_origin(TangentVector::from_spatial(mv), x.curvature());
}

namespace {

void check_centroid_inputs(std::span<const HyperPoint> points, std::span<const double> weights) {
  detail::require(!points.empty(), "lorentz_centroid: empty point set");
  detail::require(points.size() == weights.size(), "lorentz_centroid: point/weight count mismatch");
  for (const auto& p : points) {
    detail::require(p.curvature() == points.front().curvature(), "lorentz_centroid: mixed curvatures");
    detail::require(p.dim() == points.front().dim(), "lorentz_centroid: mixed dimensions");
  }
  for (double w : weights) detail::require(w > 0.0 && std::isfinite(w), "lorentz_centroid: weights must be positive");
}

}  // namespace

HyperPoint lorentz_centroid(std::span<const HyperPoint> points, std::span<const double> weights) {
  check_centroid_inputs(points, weights);
  std::vector<std::span<const double>> coords;
  coords.reserve(points.size());
  for (const auto& p : points) coords.push_back(p.coords());
  const auto& curvature = points.front().curvature();
  return HyperPoint::from_coords_unchecked(
      kernels::centroid<double>(coords, weights, curvature.beta()), curvature);
}

double centroid_objective(std::span<const HyperPoint> points, std::span<const double> weights, const HyperPoint& c) {
  double total = 0.0;
  for (std::size_t j = 0; j < points.size(); ++j) total += weights[j] * sq_lorentz_distance(points[j], c);
  return total;
}

FrechetResult frechet_descent_centroid(std::span<const HyperPoint> points, std::span<const double> weights,
                                       DistanceKind kind, std::size_t steps, double lr) {
  check_centroid_inputs(points, weights);
  detail::require(steps >= 1, "frechet_descent_centroid: steps must be >= 1");
  detail::require(lr > 0.0, "frechet_descent_centroid: lr must be positive");
  const auto curvature = points.front().curvature();
  const double beta = curvature.beta();
  const double sqrt_beta = curvature.sqrt_beta();
  const std::size_t n = points.front().dim();
  double weight_sum = 0.0;
  for (double w : weights) weight_sum += w;

  // Start from the weighted spatial mean.
  std::vector<double> z(n, 0.0);
  for (std::size_t j = 0; j < points.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) z[i] += weights[j] * points[j].spatial()[i] / weight_sum;

  auto objective = [&](std::span<const double> c) {
    double total = 0.0;
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (kind == DistanceKind::kSqLorentzian) {
        total += weights[j] * kernels::sq_lorentz_distance(points[j].coords(), c, beta);
      } else {
        const double d = kernels::distance(points[j].coords(), c, beta);
        total += weights[j] * d * d;
      }
    }
    return total;
  };

  std::vector<double> c = kernels::project<double>(z, beta);
  std::vector<double> grad(n);
  std::size_t taken = 0;
  for (; taken < steps; ++taken) {
    // For c = (sqrt(beta + |z|^2), z): d<x,c>_L/dz_i = x_i - x0 z_i / c0.
    std::fill(grad.begin(), grad.end(), 0.0);
    for (std::size_t j = 0; j < points.size(); ++j) {
      const auto x = points[j].coords();
      double outer = 0.0;  // d(term_j)/d<x,c>_L
      if (kind == DistanceKind::kSqLorentzian) {
        outer = -2.0 * weights[j];
      } else {
        const double u = -kernels::inner(x, std::span<const double>(c)) / beta;
        if (u <= 1.0 + 1e-15) continue;  // coincident point: gradient of d^2 vanishes
        const double d = sqrt_beta * std::acosh(u);
        // d(d^2)/d<x,c> = 2 d * sqrt(beta)/sqrt(u^2-1) * (-1/beta)
        outer = weights[j] * 2.0 * d * sqrt_beta / std::sqrt(u * u - 1.0) * (-1.0 / beta);
      }
      for (std::size_t i = 0; i < n; ++i) grad[i] += outer * (x[i + 1] - x[0] * z[i] / c[0]);
    }
    double grad_norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      z[i] -= lr * grad[i] / weight_sum;
      grad_norm = std::max(grad_norm, std::abs(grad[i]) / weight_sum);
    }
    c = kernels::project<double>(z, beta);
    if (grad_norm < 1e-14) {
      ++taken;
      break;
    }
  }
  return {HyperPoint::from_coords_unchecked(c, curvature), objective(c), taken};
}

double AttentionWeights::weight(std::size_t i, NodeId j) const {
  const auto cols = row_columns(i);
  for (std::size_t k = 0; k < cols.size(); ++k)
    if (cols[k] == j) return row_weights(i)[k];
  return 0.0;
}

namespace {

AttentionWeights skeleton(const Adjacency& adj) {
  AttentionWeights out;
  out.offsets.reserve(adj.node_count() + 1);
  out.offsets.push_back(0);
  for (NodeId i = 0; i < adj.node_count(); ++i) {
    out.columns.push_back(i);
    for (NodeId j : adj.neighbors(i)) out.columns.push_back(j);
    out.offsets.push_back(out.columns.size());
  }
  out.weights.assign(out.columns.size(), 0.0);
  return out;
}

}  // namespace

AttentionWeights attention_weights(std::span<const HyperPoint> features, const Matrix& attention,
                                   const Adjacency& neighborhoods) {
  detail::require(attention.rows == attention.cols, "attention_weights: attention matrix must be square");
  detail::require(features.size() == neighborhoods.node_count(), "attention_weights: feature count != node count");
  std::vector<HyperPoint> transformed;
  transformed.reserve(features.size());
  for (const auto& h : features) transformed.push_back(lorentz_matvec(attention, h));

  auto out = skeleton(neighborhoods);
  for (std::size_t i = 0; i < out.rows(); ++i) {
    const auto cols = out.row_columns(i);
    std::vector<double> mu(cols.size());
    for (std::size_t k = 0; k < cols.size(); ++k) mu[k] = -sq_lorentz_distance(transformed[i], transformed[cols[k]]);
    const double top = *std::max_element(mu.begin(), mu.end());
    double z = 0.0;
    for (auto& m : mu) z += (m = std::exp(m - top));
    for (std::size_t k = 0; k < cols.size(); ++k) out.weights[out.offsets[i] + k] = mu[k] / z;
  }
  return out;
}

AttentionWeights uniform_weights(const Adjacency& neighborhoods) {
  auto out = skeleton(neighborhoods);
  for (std::size_t i = 0; i < out.rows(); ++i) {
    const double w = 1.0 / static_cast<double>(out.offsets[i + 1] - out.offsets[i]);
    for (std::size_t k = out.offsets[i]; k < out.offsets[i + 1]; ++k) out.weights[k] = w;
  }
  return out;
}

HyperPoint lorentz_pointwise(const Activation& sigma, const HyperPoint& x) {
  auto v = log_origin(x);
  std::vector<double> s(v.spatial().begin(), v.spatial().end());
  for (auto& c : s) c = sigma(c);
  return exp_origin(TangentVector::from_spatial(std::move(s)), x.curvature());
}

std::vector<HyperPoint> lgcn_layer_forward(std::span<const HyperPoint> features, const LayerWeights& weights,
                                           const Activation& sigma, Curvature beta_out,
                                           const Adjacency& neighborhoods) {
  detail::require(features.size() == neighborhoods.node_count(), "lgcn_layer_forward: feature count != node count");
  std::vector<HyperPoint> transformed;
  transformed.reserve(features.size());
  for (const auto& h : features) transformed.push_back(lorentz_matvec(weights.transform, change_curvature(h, beta_out)));

  const auto agg = weights.attention ? attention_weights(transformed, *weights.attention, neighborhoods)
                                     : uniform_weights(neighborhoods);
  std::vector<HyperPoint> out;
  out.reserve(features.size());
  std::vector<HyperPoint> members;
  std::vector<double> member_weights;
  for (std::size_t i = 0; i < agg.rows(); ++i) {
    members.clear();
    member_weights.clear();
    const auto cols = agg.row_columns(i);
    const auto w = agg.row_weights(i);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (w[k] <= 0.0) continue;  // softmax underflow; contributes nothing
      members.push_back(transformed[cols[k]]);
      member_weights.push_back(w[k]);
    }
    out.push_back(lorentz_pointwise(sigma, lorentz_centroid(members, member_weights)));
  }
  return out;
}

}  // namespace lgcn
