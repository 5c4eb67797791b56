#include "lgcn/graph/distortion.hpp"

#include <cmath>
#include <vector>

#include "lgcn/errors.hpp"

namespace lgcn {

double average_distortion(std::span<const double> embedding_distances, std::span<const double> graph_distances) {
  detail::require(embedding_distances.size() == graph_distances.size(), "average_distortion: pair count mismatch");
  if (embedding_distances.empty()) throw UndefinedMetric("average_distortion: no countable pairs");
  double e_sum = 0.0;
  double g_sum = 0.0;
  for (std::size_t k = 0; k < embedding_distances.size(); ++k) {
    e_sum += embedding_distances[k];
    g_sum += graph_distances[k];
  }
  const auto pairs = static_cast<double>(embedding_distances.size());
  const double e_avg = e_sum / pairs;
  const double g_avg = g_sum / pairs;
  if (!(e_avg > 0.0) || !(g_avg > 0.0)) throw UndefinedMetric("average_distortion: zero average distance");
  double total = 0.0;
  for (std::size_t k = 0; k < embedding_distances.size(); ++k) {
    const double ratio = (embedding_distances[k] / e_avg) / (graph_distances[k] / g_avg);
    const double term = ratio * ratio - 1.0;
    total += term * term;
  }
  return total / pairs;
}

namespace {

template <class DistanceFn>
double distortion_over_pairs(std::size_t n, const DistanceMatrix& graph, DistanceFn&& embedding_distance) {
  detail::require(graph.size() == n, "average_distortion: embedding count != graph node count");
  std::vector<double> e;
  std::vector<double> g;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!graph.reachable(i, j)) continue;
      e.push_back(embedding_distance(i, j));
      g.push_back(static_cast<double>(graph(i, j)));
    }
  return average_distortion(e, g);
}

}  // namespace

double average_distortion(std::span<const HyperPoint> embeddings, const DistanceMatrix& graph) {
  return distortion_over_pairs(embeddings.size(), graph,
                               [&](std::size_t i, std::size_t j) { return distance(embeddings[i], embeddings[j]); });
}

double average_distortion(const Matrix& euclidean_embeddings, const DistanceMatrix& graph) {
  return distortion_over_pairs(euclidean_embeddings.rows, graph, [&](std::size_t i, std::size_t j) {
    double s = 0.0;
    for (std::size_t c = 0; c < euclidean_embeddings.cols; ++c) {
      const double diff = euclidean_embeddings(i, c) - euclidean_embeddings(j, c);
      s += diff * diff;
    }
    return std::sqrt(s);
  });
}

}  // namespace lgcn
