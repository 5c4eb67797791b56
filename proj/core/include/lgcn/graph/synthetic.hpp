#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "lgcn/graph/graph.hpp"

namespace lgcn {

enum class FeatureMode {
  kOneHot,      ///< identity features (n x n)
  kNoisyLabel,  ///< one-hot label plus Gaussian noise (n x classes)
  kAncestry,    ///< tree only: row v marks v and every ancestor of v (n x n)
};

FeatureMode parse_feature_mode(std::string_view name);
std::string_view feature_mode_name(FeatureMode mode);

struct FeatureOptions {
  FeatureMode mode = FeatureMode::kOneHot;
  double noise = 0.1;  ///< std-dev for kNoisyLabel
};

/// Complete `branching`-ary tree of the given depth in BFS order (root 0,
/// children of i are b*i+1 .. b*i+b). Labels are the index of the root's
/// child whose subtree contains the node; the root gets label 0.
Graph make_tree(std::size_t depth, std::size_t branching, const FeatureOptions& features, std::uint64_t seed);

/// Stochastic block model: `blocks` contiguous equal-as-possible blocks, edge
/// probability p_in within a block and p_out across. Labels are block ids.
Graph make_blocks(std::size_t n, std::size_t blocks, double p_in, double p_out, const FeatureOptions& features,
                  std::uint64_t seed);

}  // namespace lgcn
