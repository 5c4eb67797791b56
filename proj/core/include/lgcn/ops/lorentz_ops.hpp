#pragma once

// Graph operations on the hyperboloid: feature lifting, curvature change,
// Lorentzian matrix-vector product, centroid aggregation, distance-based
// attention and pointwise non-linearity, composed into one layer.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "lgcn/activation.hpp"
#include "lgcn/adjacency.hpp"
#include "lgcn/manifold/hyperboloid.hpp"
#include "lgcn/matrix.hpp"

namespace lgcn {

/// exp_0((0, h)).
HyperPoint lift_euclidean(std::span<const double> h, Curvature curvature);

/// exp_0^{target}(log_0^{source}(x)). Radial distances to the origin are
/// preserved; pairwise distances generally are not.
HyperPoint change_curvature(const HyperPoint& x, Curvature target);

/// M (m x n) acting on H^{n,beta} -> H^{m,beta}; no bias term.
HyperPoint lorentz_matvec(const Matrix& m, const HyperPoint& x);

/// Closed-form weighted centroid under the squared Lorentzian distance.
/// Throws ContractViolation on empty input or non-positive weights and
/// DegenerateConfiguration if |<s,s>_L| < 1e-15.
HyperPoint lorentz_centroid(std::span<const HyperPoint> points, std::span<const double> weights);

/// sum_j w_j d^2(x_j, c) with the squared Lorentzian distance.
double centroid_objective(std::span<const HyperPoint> points, std::span<const double> weights, const HyperPoint& c);

enum class DistanceKind { kSqLorentzian, kIntrinsic };

struct FrechetResult {
  HyperPoint point;
  double objective;
  std::size_t steps;
};

/// Projected gradient descent on sum_j w_j d(x_j, c)^2 (squared Lorentzian or
/// squared intrinsic distance): ambient Euclidean gradient with respect to the
/// spatial coordinates (x0 is a function of them), step, re-project. Starts at
/// the weighted mean of the points' spatial parts. Never fails on
/// non-convergence; the caller judges the returned objective.
FrechetResult frechet_descent_centroid(std::span<const HyperPoint> points, std::span<const double> weights,
                                       DistanceKind kind, std::size_t steps, double lr);

/// Softmax-normalised aggregation weights for each row i over N(i) + {i},
/// stored in CSR order: the self entry first, then neighbours ascending.
struct AttentionWeights {
  std::vector<std::size_t> offsets;
  std::vector<NodeId> columns;
  std::vector<double> weights;

  std::size_t rows() const noexcept { return offsets.empty() ? 0 : offsets.size() - 1; }
  std::span<const NodeId> row_columns(std::size_t i) const {
    return {columns.data() + offsets[i], offsets[i + 1] - offsets[i]};
  }
  std::span<const double> row_weights(std::size_t i) const {
    return {weights.data() + offsets[i], offsets[i + 1] - offsets[i]};
  }
  /// Weight of column j in row i, 0 if j is not in the row.
  double weight(std::size_t i, NodeId j) const;
};

/// mu_ij = -d_L^2(M_att (x) h_i, M_att (x) h_j), w_ij = softmax_j(mu_ij).
AttentionWeights attention_weights(std::span<const HyperPoint> features, const Matrix& attention,
                                   const Adjacency& neighborhoods);
/// Uniform weights 1/|N(i) + {i}|.
AttentionWeights uniform_weights(const Adjacency& neighborhoods);

HyperPoint lorentz_pointwise(const Activation& sigma, const HyperPoint& x);

struct LayerWeights {
  Matrix transform;                 ///< m x n
  std::optional<Matrix> attention;  ///< m x m; uniform aggregation when absent
};

/// curvature change -> matvec -> attention -> centroid -> non-linearity.
std::vector<HyperPoint> lgcn_layer_forward(std::span<const HyperPoint> features, const LayerWeights& weights,
                                           const Activation& sigma, Curvature beta_out,
                                           const Adjacency& neighborhoods);

}  // namespace lgcn
