#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace lgcn {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Immutable undirected adjacency in compressed form. Neighbor lists are
/// sorted and deduplicated, symmetric, and never contain the node itself.
class Adjacency {
 public:
  Adjacency() : offsets_{0} {}
  /// Builds from an arbitrary edge list; self-loops and duplicates dropped.
  static Adjacency from_edges(std::size_t node_count, std::span<const Edge> edges);

  std::size_t node_count() const noexcept { return offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return neighbors_.size() / 2; }
  std::span<const NodeId> neighbors(NodeId i) const {
    return {neighbors_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  std::size_t degree(NodeId i) const { return offsets_[i + 1] - offsets_[i]; }
  bool has_edge(NodeId i, NodeId j) const;
  /// Each undirected edge once, as (min, max), sorted.
  std::vector<Edge> edges() const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> neighbors_;
};

}  // namespace lgcn
