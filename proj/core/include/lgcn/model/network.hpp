#pragma once

// LGCN network: a stack of Lorentzian layers over a fixed message-passing
// graph, evaluated on `ad::Var` so one code path serves training (leaves on a
// tape) and evaluation (constants only, no tape).

#include <cstddef>
#include <optional>
#include <vector>

#include "lgcn/adjacency.hpp"
#include "lgcn/autodiff/parameter.hpp"
#include "lgcn/autodiff/tape.hpp"
#include "lgcn/manifold/hyperboloid.hpp"
#include "lgcn/matrix.hpp"
#include "lgcn/model/config.hpp"
#include "lgcn/util/rng.hpp"

namespace lgcn::model {

using VarPoint = std::vector<ad::Var>;

/// Network parameters bound for one forward pass.
struct BoundParams {
  std::vector<std::vector<ad::Var>> leaves;   ///< tape leaves, parallel to Network::parameters()
  std::vector<std::vector<ad::Var>> tensors;  ///< leaves after DropConnect masking; used by forward
  std::vector<ad::Var> thetas;                ///< parallel to Network::curvatures()
};

/// Node embeddings: n points of d+1 coordinates (Lorentz) or d coordinates
/// (Euclidean), and the curvature they live in (1 for Euclidean).
struct VarEmbedding {
  std::vector<VarPoint> points;
  ad::Var beta{1.0};
};

class Network {
 public:
  /// Glorot-uniform weights from the config seed; curvatures start at init_beta.
  /// `classes` > 0 adds a tangent-space linear classification head.
  explicit Network(const LgcnConfig& config, std::size_t classes = 0);

  const LgcnConfig& config() const noexcept { return config_; }
  std::vector<ad::Parameter>& parameters() noexcept { return params_; }
  const std::vector<ad::Parameter>& parameters() const noexcept { return params_; }
  std::vector<ad::CurvatureParam>& curvatures() noexcept { return curvatures_; }
  const std::vector<ad::CurvatureParam>& curvatures() const noexcept { return curvatures_; }

  std::size_t transform_index(std::size_t layer) const { return layer_params_[layer].transform; }
  std::optional<std::size_t> attention_index(std::size_t layer) const { return layer_params_[layer].attention; }
  std::optional<std::size_t> head_weight_index() const noexcept { return head_weight_; }
  std::optional<std::size_t> head_bias_index() const noexcept { return head_bias_; }
  std::size_t curvature_index(std::size_t layer) const noexcept { return config_.tie_curvature ? 0 : layer; }
  double layer_beta(std::size_t layer) const { return curvatures_[curvature_index(layer)].beta(); }

  /// Leaves on `tape` (constants when tape is null). `masks`, when given,
  /// multiplies each weight tensor entry-wise (DropConnect); entries for the
  /// classification head are ignored.
  BoundParams bind(ad::Tape* tape, const std::vector<std::vector<double>>* masks = nullptr) const;

  /// Draws a DropConnect mask per layer weight tensor.
  std::vector<std::vector<double>> draw_masks(Rng& rng) const;

  /// Runs every layer over `graph` starting from Euclidean `features`.
  VarEmbedding forward(const BoundParams& bound, const Matrix& features, const Adjacency& graph) const;

  /// Class logits from final embeddings through the head.
  std::vector<std::vector<ad::Var>> logits(const BoundParams& bound, const VarEmbedding& embedding,
                                           std::span<const NodeId> nodes) const;

  /// Adds weight_decay * w to the gradients of layer weights and the head.
  void apply_weight_decay();

  /// Accumulates leaf gradients from `tape` into the parameters' grad
  /// buffers and returns d(loss)/d(theta) per curvature.
  std::vector<double> collect_grads(const ad::Tape& tape, const BoundParams& bound);

  /// Double-precision embeddings from a tape-free forward pass.
  std::vector<HyperPoint> embed(const Matrix& features, const Adjacency& graph) const;
  /// Euclidean geometry only.
  Matrix embed_euclidean(const Matrix& features, const Adjacency& graph) const;

 private:
  struct LayerParams {
    std::size_t transform;
    std::optional<std::size_t> attention;
  };

  VarEmbedding forward_lorentz(const BoundParams& bound, const Matrix& features, const Adjacency& graph) const;
  VarEmbedding forward_euclidean(const BoundParams& bound, const Matrix& features, const Adjacency& graph) const;

  LgcnConfig config_;
  std::vector<ad::Parameter> params_;
  std::vector<LayerParams> layer_params_;
  std::optional<std::size_t> head_weight_;
  std::optional<std::size_t> head_bias_;
  std::vector<ad::CurvatureParam> curvatures_;
};

}  // namespace lgcn::model
