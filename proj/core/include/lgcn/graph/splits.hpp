#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lgcn/adjacency.hpp"
#include "lgcn/graph/graph.hpp"
#include "lgcn/util/rng.hpp"

namespace lgcn {

/// Edge split for link prediction. Validation/test negatives are non-edges
/// of the full graph, disjoint from each other, one per positive.
struct LinkSplits {
  std::vector<Edge> train;
  std::vector<Edge> val;
  std::vector<Edge> test;
  std::vector<Edge> val_negative;
  std::vector<Edge> test_negative;

  /// Message-passing graph: train edges only.
  Adjacency train_graph(std::size_t node_count) const;
};

/// 85/5/10: val = floor(5%), test = floor(10%), the remainder trains.
LinkSplits make_link_splits(const Graph& graph, std::uint64_t seed);

struct NodeSplitConfig {
  std::size_t train_per_class = 20;
  std::size_t val = 500;
  std::size_t test = 1000;
};

struct NodeSplits {
  std::vector<NodeId> train;
  std::vector<NodeId> val;
  std::vector<NodeId> test;
  bool proportional = false;  ///< true when the 30/10/60 fallback was used
};

/// Per-class train sampling plus fixed-size val/test when the labelled node
/// count allows it; otherwise a 30/10/60 random split of labelled nodes.
/// Throws ContractViolation naming the class when a class is too small for
/// the per-class protocol.
NodeSplits make_node_splits(const Graph& graph, std::uint64_t seed, const NodeSplitConfig& config = {});

/// Uniform non-edge (i < j) of `graph`.
Edge sample_non_edge(const Adjacency& graph, Rng& rng);

}  // namespace lgcn
