#include "lgcn/adjacency.hpp"

#include <algorithm>

#include "lgcn/errors.hpp"

namespace lgcn {

Adjacency Adjacency::from_edges(std::size_t node_count, std::span<const Edge> edges) {
  std::vector<std::vector<NodeId>> lists(node_count);
  for (const auto& [u, v] : edges) {
    detail::require(u < node_count && v < node_count, "Adjacency: edge endpoint out of range");
    if (u == v) continue;
    lists[u].push_back(v);
    lists[v].push_back(u);
  }
  Adjacency adj;
  adj.offsets_.assign(1, 0);
  adj.offsets_.reserve(node_count + 1);
  for (auto& list : lists) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    adj.neighbors_.insert(adj.neighbors_.end(), list.begin(), list.end());
    adj.offsets_.push_back(adj.neighbors_.size());
  }
  return adj;
}

bool Adjacency::has_edge(NodeId i, NodeId j) const {
  if (i >= node_count() || j >= node_count()) return false;
  const auto n = neighbors(i);
  return std::binary_search(n.begin(), n.end(), j);
}

std::vector<Edge> Adjacency::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (NodeId i = 0; i < node_count(); ++i)
    for (NodeId j : neighbors(i))
      if (i < j) out.emplace_back(i, j);
  return out;
}

}  // namespace lgcn
