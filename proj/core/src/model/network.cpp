#include "lgcn/model/network.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lgcn/autodiff/optim.hpp"
#include "lgcn/errors.hpp"
#include "lgcn/manifold/kernels.hpp"

namespace lgcn::model {
namespace {

using ad::Var;

void glorot_uniform(ad::Parameter& p, Rng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(p.rows + p.cols));
  for (auto& v : p.values) v = uniform(rng, -limit, limit);
}

std::vector<std::vector<Var>> feature_rows(const Matrix& features) {
  std::vector<std::vector<Var>> rows(features.rows);
  for (std::size_t i = 0; i < features.rows; ++i) rows[i].assign(features.row(i).begin(), features.row(i).end());
  return rows;
}

/// Node i first, then its neighbours.
std::vector<NodeId> aggregation_row(const Adjacency& graph, NodeId i) {
  std::vector<NodeId> row{i};
  const auto nb = graph.neighbors(i);
  row.insert(row.end(), nb.begin(), nb.end());
  return row;
}

}  // namespace

Network::Network(const LgcnConfig& config, std::size_t classes) : config_(config) {
  config_.validate();
  auto rng = derive_rng(config_.seed, Stream::kInit);
  for (std::size_t l = 0; l < config_.layers(); ++l) {
    const std::size_t in = config_.dims[l];
    const std::size_t out = config_.dims[l + 1];
    LayerParams lp{params_.size(), std::nullopt};
    params_.emplace_back("layer" + std::to_string(l) + ".transform", out, in);
    glorot_uniform(params_.back(), rng);
    if (config_.attention && config_.geometry == Geometry::kLorentz) {
      lp.attention = params_.size();
      params_.emplace_back("layer" + std::to_string(l) + ".attention", out, out);
      glorot_uniform(params_.back(), rng);
    }
    layer_params_.push_back(lp);
  }
  if (classes > 0) {
    head_weight_ = params_.size();
    params_.emplace_back("head.weight", classes, config_.output_dim());
    glorot_uniform(params_.back(), rng);
    head_bias_ = params_.size();
    params_.emplace_back("head.bias", classes, 1);
  }
  const std::size_t n_curv = config_.tie_curvature ? 1 : config_.layers();
  curvatures_.assign(n_curv, ad::CurvatureParam::from_beta(config_.init_beta));
}

BoundParams Network::bind(ad::Tape* tape, const std::vector<std::vector<double>>* masks) const {
  BoundParams b;
  b.leaves.reserve(params_.size());
  for (const auto& p : params_) b.leaves.push_back(p.bind(tape));
  b.tensors = b.leaves;
  for (const auto& c : curvatures_)
    b.thetas.push_back(tape && config_.train_curvature ? tape->variable(c.theta()) : Var(c.theta()));
  if (masks) {
    for (std::size_t l = 0; l < layer_params_.size(); ++l) {
      for (auto idx : {std::optional<std::size_t>(layer_params_[l].transform), layer_params_[l].attention}) {
        if (!idx) continue;
        const auto& mask = (*masks)[*idx];
        auto& t = b.tensors[*idx];
        detail::require(mask.size() == t.size(), "Network::bind: mask shape mismatch");
        for (std::size_t k = 0; k < t.size(); ++k) t[k] = t[k] * Var(mask[k]);
      }
    }
  }
  return b;
}

std::vector<std::vector<double>> Network::draw_masks(Rng& rng) const {
  std::vector<std::vector<double>> masks(params_.size());
  for (const auto& lp : layer_params_) {
    masks[lp.transform] = ad::dropconnect_mask(params_[lp.transform].size(), config_.dropconnect, rng);
    if (lp.attention) masks[*lp.attention] = ad::dropconnect_mask(params_[*lp.attention].size(), config_.dropconnect, rng);
  }
  return masks;
}

VarEmbedding Network::forward(const BoundParams& bound, const Matrix& features, const Adjacency& graph) const {
  detail::require(features.rows == graph.node_count(), "Network::forward: feature rows != node count");
  detail::require(features.cols == config_.dims.front(), "Network::forward: feature width != dims[0]");
  return config_.geometry == Geometry::kLorentz ? forward_lorentz(bound, features, graph)
                                                : forward_euclidean(bound, features, graph);
}

VarEmbedding Network::forward_lorentz(const BoundParams& bound, const Matrix& features, const Adjacency& graph) const {
  const std::size_t n = graph.node_count();
  std::vector<VarPoint> current = feature_rows(features);
  Var beta_prev;
  std::vector<VarPoint> x(n), t(n), att(n);
  std::vector<std::span<const Var>> members;
  std::vector<Var> weights;

  for (std::size_t l = 0; l < config_.layers(); ++l) {
    const Var beta = ad::CurvatureParam::beta(bound.thetas[curvature_index(l)]);
    const std::size_t in = config_.dims[l];
    const std::size_t out = config_.dims[l + 1];

    for (std::size_t i = 0; i < n; ++i) {
      if (l == 0)
        x[i] = kernels::exp_origin<Var>(current[i], beta);
      else if (curvature_index(l) == curvature_index(l - 1))
        x[i] = std::move(current[i]);
      else
        x[i] = kernels::change_curvature<Var>(current[i], beta_prev, beta);
    }

    const auto& m = bound.tensors[layer_params_[l].transform];
    for (std::size_t i = 0; i < n; ++i) t[i] = kernels::lorentz_matvec<Var>(m, out, in, x[i], beta);

    const auto att_idx = layer_params_[l].attention;
    if (att_idx)
      for (std::size_t i = 0; i < n; ++i) att[i] = kernels::lorentz_matvec<Var>(bound.tensors[*att_idx], out, out, t[i], beta);

    std::vector<VarPoint> next(n);
    for (NodeId i = 0; i < n; ++i) {
      const auto row = aggregation_row(graph, i);
      members.clear();
      weights.clear();
      for (NodeId j : row) members.emplace_back(t[j]);
      if (att_idx) {
        // mu_ij = -d_L^2(a_i, a_j) = 2 beta + 2 <a_i, a_j>_L; mu_ii = 0.
        std::vector<Var> scores;
        scores.reserve(row.size());
        scores.emplace_back(0.0);
        for (std::size_t k = 1; k < row.size(); ++k)
          scores.push_back(Var(2.0) * beta + Var(2.0) * kernels::inner<Var>(att[i], att[row[k]]));
        double top = 0.0;
        for (const auto& s : scores) top = std::max(top, s.value);
        std::vector<Var> e;
        e.reserve(scores.size());
        for (const auto& s : scores) e.push_back(ad::exp(s - Var(top)));
        const Var z = ad::sum(e);
        for (const auto& ek : e) weights.push_back(ek / z);
      } else {
        weights.assign(row.size(), Var(1.0 / static_cast<double>(row.size())));
      }
      const auto c = kernels::centroid<Var>(members, weights, beta);
      next[i] = kernels::pointwise<Var>(config_.activation, c, beta);
    }
    current = std::move(next);
    beta_prev = beta;
  }
  return {std::move(current), beta_prev};
}

VarEmbedding Network::forward_euclidean(const BoundParams& bound, const Matrix& features,
                                        const Adjacency& graph) const {
  const std::size_t n = graph.node_count();
  std::vector<VarPoint> current = feature_rows(features);
  std::vector<VarPoint> t(n);
  std::vector<Var> column;
  for (std::size_t l = 0; l < config_.layers(); ++l) {
    const std::size_t in = config_.dims[l];
    const std::size_t out = config_.dims[l + 1];
    const auto& m = bound.tensors[layer_params_[l].transform];
    for (std::size_t i = 0; i < n; ++i) t[i] = kernels::matvec<Var>(m, out, in, current[i]);
    std::vector<VarPoint> next(n);
    for (NodeId i = 0; i < n; ++i) {
      const auto row = aggregation_row(graph, i);
      const Var inv(1.0 / static_cast<double>(row.size()));
      next[i].reserve(out);
      for (std::size_t c = 0; c < out; ++c) {
        column.clear();
        for (NodeId j : row) column.push_back(t[j][c]);
        next[i].push_back(kernels::apply(config_.activation, ad::sum(column) * inv));
      }
    }
    current = std::move(next);
  }
  return {std::move(current), Var(1.0)};
}

std::vector<std::vector<Var>> Network::logits(const BoundParams& bound, const VarEmbedding& embedding,
                                              std::span<const NodeId> nodes) const {
  detail::require(head_weight_.has_value(), "Network::logits: network has no classification head");
  const auto& w = bound.tensors[*head_weight_];
  const auto& b = bound.tensors[*head_bias_];
  const std::size_t classes = params_[*head_weight_].rows;
  const std::size_t d = params_[*head_weight_].cols;
  std::vector<std::vector<Var>> out;
  out.reserve(nodes.size());
  for (NodeId i : nodes) {
    const auto tangent = config_.geometry == Geometry::kLorentz
                             ? kernels::log_origin<Var>(embedding.points[i], embedding.beta)
                             : embedding.points[i];
    auto z = kernels::matvec<Var>(w, classes, d, tangent);
    for (std::size_t c = 0; c < classes; ++c) z[c] = z[c] + b[c];
    out.push_back(std::move(z));
  }
  return out;
}

void Network::apply_weight_decay() {
  if (config_.weight_decay == 0.0) return;
  for (auto& p : params_)
    for (std::size_t k = 0; k < p.size(); ++k) p.grads[k] += config_.weight_decay * p.values[k];
}

std::vector<double> Network::collect_grads(const ad::Tape& tape, const BoundParams& bound) {
  for (std::size_t k = 0; k < params_.size(); ++k) params_[k].accumulate_grads(tape, bound.leaves[k]);
  std::vector<double> theta_grads;
  theta_grads.reserve(bound.thetas.size());
  for (const auto& th : bound.thetas) theta_grads.push_back(tape.grad(th));
  return theta_grads;
}

std::vector<HyperPoint> Network::embed(const Matrix& features, const Adjacency& graph) const {
  detail::require(config_.geometry == Geometry::kLorentz, "Network::embed: Lorentz geometry only");
  const auto emb = forward(bind(nullptr), features, graph);
  const Curvature curvature(emb.beta.value);
  std::vector<HyperPoint> out;
  out.reserve(emb.points.size());
  for (const auto& p : emb.points) {
    std::vector<double> coords;
    coords.reserve(p.size());
    for (const auto& v : p) coords.push_back(v.value);
    out.push_back(HyperPoint::from_coords(std::move(coords), curvature));
  }
  return out;
}

Matrix Network::embed_euclidean(const Matrix& features, const Adjacency& graph) const {
  detail::require(config_.geometry == Geometry::kEuclidean, "Network::embed_euclidean: Euclidean geometry only");
  const auto emb = forward(bind(nullptr), features, graph);
  Matrix out(emb.points.size(), config_.output_dim());
  for (std::size_t i = 0; i < emb.points.size(); ++i)
    for (std::size_t c = 0; c < out.cols; ++c) out(i, c) = emb.points[i][c].value;
  return out;
}

}  // namespace lgcn::model
