#include "lgcn/graph/synthetic.hpp"

#include <string>
#include <vector>

#include "lgcn/errors.hpp"
#include "lgcn/util/rng.hpp"

namespace lgcn {
namespace {

Matrix label_features(const std::vector<int>& labels, std::size_t classes, double noise, Rng& rng) {
  Matrix f(labels.size(), classes);
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t c = 0; c < classes; ++c)
      f(i, c) = (static_cast<int>(c) == labels[i] ? 1.0 : 0.0) + noise * standard_normal(rng);
  return f;
}

}  // namespace

FeatureMode parse_feature_mode(std::string_view name) {
  if (name == "onehot") return FeatureMode::kOneHot;
  if (name == "label") return FeatureMode::kNoisyLabel;
  if (name == "ancestry") return FeatureMode::kAncestry;
  throw ContractViolation("unknown feature mode '" + std::string(name) + "' (onehot|label|ancestry)");
}

std::string_view feature_mode_name(FeatureMode mode) {
  switch (mode) {
    case FeatureMode::kOneHot:
      return "onehot";
    case FeatureMode::kNoisyLabel:
      return "label";
    case FeatureMode::kAncestry:
      return "ancestry";
  }
  return "onehot";
}

Graph make_tree(std::size_t depth, std::size_t branching, const FeatureOptions& features, std::uint64_t seed) {
  detail::require(branching >= 1, "make_tree: branching must be >= 1");
  detail::require(depth >= 1 && depth <= 24, "make_tree: depth must lie in [1, 24]");
  std::size_t n = 1;
  std::size_t level = 1;
  for (std::size_t d = 0; d < depth; ++d) {
    level *= branching;
    n += level;
    detail::require(n <= 5'000'000, "make_tree: tree too large");
  }
  std::vector<Edge> edges;
  std::vector<NodeId> parent(n, 0);
  for (std::size_t child = 1; child < n; ++child) {
    parent[child] = static_cast<NodeId>((child - 1) / branching);
    edges.emplace_back(parent[child], static_cast<NodeId>(child));
  }
  Graph g;
  g.adjacency = Adjacency::from_edges(n, edges);
  g.labels.assign(n, 0);
  for (std::size_t v = 1; v < n; ++v) {
    std::size_t top = v;
    while (parent[top] != 0) top = parent[top];
    g.labels[v] = static_cast<int>(top - 1);
  }

  auto rng = derive_rng(seed, Stream::kDataGen);
  switch (features.mode) {
    case FeatureMode::kOneHot:
      g.features = Matrix::identity(n);
      break;
    case FeatureMode::kNoisyLabel:
      g.features = label_features(g.labels, branching, features.noise, rng);
      break;
    case FeatureMode::kAncestry: {
      g.features = Matrix(n, n);
      for (std::size_t v = 0; v < n; ++v) {
        std::size_t a = v;
        g.features(v, a) = 1.0;
        while (a != 0) {
          a = parent[a];
          g.features(v, a) = 1.0;
        }
      }
      break;
    }
  }
  return g;
}

Graph make_blocks(std::size_t n, std::size_t blocks, double p_in, double p_out, const FeatureOptions& features,
                  std::uint64_t seed) {
  detail::require(n >= 2, "make_blocks: need at least 2 nodes");
  detail::require(blocks >= 1 && blocks <= n, "make_blocks: blocks must lie in [1, n]");
  detail::require(p_in >= 0.0 && p_in <= 1.0 && p_out >= 0.0 && p_out <= 1.0,
                  "make_blocks: probabilities must lie in [0, 1]");
  detail::require(features.mode != FeatureMode::kAncestry, "make_blocks: ancestry features need a tree");
  auto rng = derive_rng(seed, Stream::kDataGen);
  Graph g;
  g.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) g.labels[i] = static_cast<int>(i * blocks / n);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double p = g.labels[i] == g.labels[j] ? p_in : p_out;
      if (uniform01(rng) < p) edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
    }
  g.adjacency = Adjacency::from_edges(n, edges);
  g.features = features.mode == FeatureMode::kOneHot ? Matrix::identity(n)
                                                     : label_features(g.labels, blocks, features.noise, rng);
  return g;
}

}  // namespace lgcn
