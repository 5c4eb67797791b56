#include "lgcn/graph/distances.hpp"

#include "lgcn/errors.hpp"
#include "lgcn/util/parallel.hpp"

namespace lgcn {

DistanceMatrix::DistanceMatrix(std::size_t n, std::vector<std::int32_t> values) : n_(n), d_(std::move(values)) {
  detail::require(d_.size() == n * n, "DistanceMatrix: value count must be n*n");
}

DistanceMatrix all_pairs_distances(const Adjacency& graph) {
  const std::size_t n = graph.node_count();
  std::vector<std::int32_t> d(n * n, DistanceMatrix::kUnreachable);
  parallel_chunks(n, 16, [&](std::size_t, std::size_t begin, std::size_t end) {
    std::vector<NodeId> queue;
    queue.reserve(n);
    for (std::size_t src = begin; src < end; ++src) {
      std::int32_t* row = d.data() + src * n;
      queue.clear();
      queue.push_back(static_cast<NodeId>(src));
      row[src] = 0;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const NodeId u = queue[head];
        for (NodeId v : graph.neighbors(u)) {
          if (row[v] != DistanceMatrix::kUnreachable) continue;
          row[v] = row[u] + 1;
          queue.push_back(v);
        }
      }
    }
  });
  return DistanceMatrix(n, std::move(d));
}

}  // namespace lgcn
