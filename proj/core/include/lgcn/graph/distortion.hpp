#pragma once

#include <span>

#include "lgcn/graph/distances.hpp"
#include "lgcn/manifold/hyperboloid.hpp"
#include "lgcn/matrix.hpp"

namespace lgcn {

/// Average distortion between embedding and graph distances:
///   mean over pairs of ((e_ij / e_avg) / (g_ij / g_avg))^2 - 1)^2.
/// Pairs i == j and disconnected pairs are excluded from the sum and from the
/// averages; the divisor is the counted pair total. Throws UndefinedMetric if
/// nothing is counted or the embedding distances are all zero.
double average_distortion(std::span<const double> embedding_distances, std::span<const double> graph_distances);

/// Intrinsic hyperboloid distances.
double average_distortion(std::span<const HyperPoint> embeddings, const DistanceMatrix& graph);
/// Euclidean distances between rows.
double average_distortion(const Matrix& euclidean_embeddings, const DistanceMatrix& graph);

}  // namespace lgcn
