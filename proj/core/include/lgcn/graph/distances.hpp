#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lgcn/adjacency.hpp"

namespace lgcn {

/// Dense n x n hop-count matrix. Unreachable pairs hold kUnreachable.
class DistanceMatrix {
 public:
  static constexpr std::int32_t kUnreachable = -1;

  DistanceMatrix() = default;
  DistanceMatrix(std::size_t n, std::vector<std::int32_t> values);

  std::size_t size() const noexcept { return n_; }
  std::int32_t operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
  bool reachable(std::size_t i, std::size_t j) const { return d_[i * n_ + j] != kUnreachable; }

 private:
  std::size_t n_ = 0;
  std::vector<std::int32_t> d_;
};

/// BFS from every node (parallel over sources).
DistanceMatrix all_pairs_distances(const Adjacency& graph);

}  // namespace lgcn
