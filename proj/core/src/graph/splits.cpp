#include "lgcn/graph/splits.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "lgcn/errors.hpp"

namespace lgcn {
namespace {

template <class T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_index(rng, i)]);
}

Edge ordered(NodeId a, NodeId b) { return a < b ? Edge{a, b} : Edge{b, a}; }

}  // namespace

Adjacency LinkSplits::train_graph(std::size_t node_count) const { return Adjacency::from_edges(node_count, train); }

Edge sample_non_edge(const Adjacency& graph, Rng& rng) {
  const std::size_t n = graph.node_count();
  const std::size_t pairs = n * (n - 1) / 2;
  detail::require(n >= 2 && graph.edge_count() < pairs, "sample_non_edge: graph has no non-edges");
  while (true) {
    const auto a = static_cast<NodeId>(uniform_index(rng, n));
    const auto b = static_cast<NodeId>(uniform_index(rng, n));
    if (a == b || graph.has_edge(a, b)) continue;
    return ordered(a, b);
  }
}

LinkSplits make_link_splits(const Graph& graph, std::uint64_t seed) {
  auto rng = derive_rng(seed, Stream::kSplits);
  auto edges = graph.adjacency.edges();
  detail::require(!edges.empty(), "make_link_splits: graph has no edges");
  shuffle(edges, rng);
  const std::size_t m = edges.size();
  const std::size_t n_val = m * 5 / 100;
  const std::size_t n_test = m * 10 / 100;

  LinkSplits s;
  s.val.assign(edges.begin(), edges.begin() + static_cast<std::ptrdiff_t>(n_val));
  s.test.assign(edges.begin() + static_cast<std::ptrdiff_t>(n_val),
                edges.begin() + static_cast<std::ptrdiff_t>(n_val + n_test));
  s.train.assign(edges.begin() + static_cast<std::ptrdiff_t>(n_val + n_test), edges.end());
  std::sort(s.train.begin(), s.train.end());

  const std::size_t n = graph.node_count();
  const std::size_t non_edges = n * (n - 1) / 2 - m;
  detail::require(non_edges >= n_val + n_test, "make_link_splits: not enough non-edges for negative sampling");
  std::set<Edge> taken;
  auto draw = [&](std::size_t count, std::vector<Edge>& out) {
    while (out.size() < count) {
      const Edge e = sample_non_edge(graph.adjacency, rng);
      if (taken.insert(e).second) out.push_back(e);
    }
  };
  draw(n_val, s.val_negative);
  draw(n_test, s.test_negative);
  return s;
}

NodeSplits make_node_splits(const Graph& graph, std::uint64_t seed, const NodeSplitConfig& config) {
  detail::require(graph.has_labels(), "make_node_splits: graph has no labels");
  auto rng = derive_rng(seed, Stream::kSplits);
  std::vector<NodeId> labelled;
  for (NodeId i = 0; i < graph.labels.size(); ++i)
    if (graph.labels[i] != kUnlabeled) labelled.push_back(i);
  detail::require(!labelled.empty(), "make_node_splits: no labelled nodes");
  const std::size_t classes = graph.class_count();

  NodeSplits s;
  const std::size_t needed = config.train_per_class * classes + config.val + config.test;
  if (labelled.size() >= needed) {
    std::vector<std::vector<NodeId>> by_class(classes);
    for (NodeId i : labelled) by_class[static_cast<std::size_t>(graph.labels[i])].push_back(i);
    std::vector<char> used(graph.node_count(), 0);
    for (std::size_t c = 0; c < classes; ++c) {
      if (by_class[c].size() < config.train_per_class)
        throw ContractViolation("make_node_splits: class " + std::to_string(c) + " has " +
                                std::to_string(by_class[c].size()) + " nodes, fewer than the " +
                                std::to_string(config.train_per_class) + " requested for training");
      shuffle(by_class[c], rng);
      for (std::size_t k = 0; k < config.train_per_class; ++k) {
        s.train.push_back(by_class[c][k]);
        used[by_class[c][k]] = 1;
      }
    }
    std::vector<NodeId> rest;
    for (NodeId i : labelled)
      if (!used[i]) rest.push_back(i);
    shuffle(rest, rng);
    s.val.assign(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(config.val));
    s.test.assign(rest.begin() + static_cast<std::ptrdiff_t>(config.val),
                  rest.begin() + static_cast<std::ptrdiff_t>(config.val + config.test));
  } else {
    s.proportional = true;
    shuffle(labelled, rng);
    const std::size_t n = labelled.size();
    const std::size_t n_val = n * 10 / 100;
    const std::size_t n_test = n * 60 / 100;
    const std::size_t n_train = n - n_val - n_test;
    s.train.assign(labelled.begin(), labelled.begin() + static_cast<std::ptrdiff_t>(n_train));
    s.val.assign(labelled.begin() + static_cast<std::ptrdiff_t>(n_train),
                 labelled.begin() + static_cast<std::ptrdiff_t>(n_train + n_val));
    s.test.assign(labelled.begin() + static_cast<std::ptrdiff_t>(n_train + n_val), labelled.end());
  }
  std::sort(s.train.begin(), s.train.end());
  std::sort(s.val.begin(), s.val.end());
  std::sort(s.test.begin(), s.test.end());
  return s;
}

}  // namespace lgcn
