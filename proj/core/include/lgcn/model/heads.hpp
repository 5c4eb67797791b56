#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lgcn/adjacency.hpp"
#include "lgcn/autodiff/tape.hpp"
#include "lgcn/manifold/hyperboloid.hpp"
#include "lgcn/model/config.hpp"
#include "lgcn/model/network.hpp"

namespace lgcn::model {

/// Probabilities are clamped to [kProbClamp, 1 - kProbClamp] inside
/// cross-entropy terms.
inline constexpr double kProbClamp = 1e-7;

/// Fermi-Dirac edge probability 1 / (exp((d^2 - r)/t) + 1) with d^2 the
/// squared Lorentzian distance.
double fermi_dirac_score(const HyperPoint& u, const HyperPoint& v, double r, double t);
/// Same decoder on a precomputed squared distance.
double fermi_dirac_from_sq_distance(double sq_distance, double r, double t);

/// Squared distance between two embedded nodes: Lorentzian for the
/// hyperboloid, Euclidean for the baseline.
ad::Var embedding_sq_distance(const VarEmbedding& emb, Geometry geometry, NodeId i, NodeId j);

/// Mean binary cross-entropy of Fermi-Dirac scores, positives labelled 1.
/// Throws ContractViolation if either edge set is empty.
ad::Var link_prediction_loss(const VarEmbedding& emb, const LgcnConfig& config, std::span<const Edge> positive,
                             std::span<const Edge> negative);

/// Scores (probabilities) for a list of pairs.
std::vector<double> link_scores(const VarEmbedding& emb, const LgcnConfig& config, std::span<const Edge> pairs);

/// Mean softmax cross-entropy. Throws ContractViolation for labels outside [0, C).
ad::Var classification_loss(std::span<const std::vector<ad::Var>> logits, std::span<const int> labels);
std::vector<int> predict_classes(std::span<const std::vector<ad::Var>> logits);

/// Mann-Whitney AUC with half credit for ties. Throws UndefinedMetric unless
/// both classes are present.
double evaluate_auc(std::span<const double> scores, std::span<const int> labels);
double accuracy(std::span<const int> predicted, std::span<const int> labels);

}  // namespace lgcn::model
