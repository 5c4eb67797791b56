#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lgcn/adjacency.hpp"
#include "lgcn/matrix.hpp"

namespace lgcn {

inline constexpr int kUnlabeled = -1;

/// Undirected unweighted graph with optional node features and labels.
struct Graph {
  Adjacency adjacency;
  Matrix features;          ///< n x k; empty means "use identity features"
  std::vector<int> labels;  ///< size n or empty; kUnlabeled for unknown nodes

  std::size_t node_count() const noexcept { return adjacency.node_count(); }
  bool has_features() const noexcept { return features.rows > 0; }
  bool has_labels() const noexcept { return !labels.empty(); }
  /// Stored features, or the n x n identity when none were given.
  Matrix features_or_identity() const;
  /// 1 + max label, 0 without labels.
  std::size_t class_count() const;
};

/// Edge CSV "u,v" (0-indexed) plus optional feature CSV (one row per node) and
/// label CSV "node,label". Node count is the largest index seen + 1, or the
/// feature row count when features are given. Blank lines and lines starting
/// with '#' are ignored. Throws ParseError naming the file and line.
Graph load_graph(const std::string& edges_path, const std::optional<std::string>& features_path = std::nullopt,
                 const std::optional<std::string>& labels_path = std::nullopt);

void write_edges_csv(const std::string& path, const Adjacency& adjacency);
void write_features_csv(const std::string& path, const Matrix& features);
void write_labels_csv(const std::string& path, const std::vector<int>& labels);

/// Shortest representation that parses back to the same double.
std::string format_double(double x);

}  // namespace lgcn
