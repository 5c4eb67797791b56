#include "lgcn/model/heads.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lgcn/errors.hpp"
#include "lgcn/manifold/kernels.hpp"

namespace lgcn::model {

using ad::Var;

double fermi_dirac_from_sq_distance(double sq_distance, double r, double t) {
  detail::require(t > 0.0, "fermi_dirac: t must be positive");
  return ad::sigmoid(Var(-(sq_distance - r) / t)).value;
}

double fermi_dirac_score(const HyperPoint& u, const HyperPoint& v, double r, double t) {
  return fermi_dirac_from_sq_distance(sq_lorentz_distance(u, v), r, t);
}

Var embedding_sq_distance(const VarEmbedding& emb, Geometry geometry, NodeId i, NodeId j) {
  const auto& a = emb.points[i];
  const auto& b = emb.points[j];
  if (geometry == Geometry::kLorentz)
    return kernels::sq_lorentz_distance<Var>(a, b, emb.beta);
  std::vector<Var> diff;
  diff.reserve(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) diff.push_back(a[k] - b[k]);
  return ad::dot(diff, diff);
}

Var link_prediction_loss(const VarEmbedding& emb, const LgcnConfig& config, std::span<const Edge> positive,
                         std::span<const Edge> negative) {
  detail::require(!positive.empty() && !negative.empty(), "link_prediction_loss: empty edge set");
  std::vector<Var> terms;
  terms.reserve(positive.size() + negative.size());
  for (const auto* set : {&positive, &negative}) {
    const bool is_positive = set == &positive;
    for (const auto& [i, j] : *set) {
      const Var z = (embedding_sq_distance(emb, config.geometry, i, j) - Var(config.r)) / Var(config.t);
      // p = sigmoid(-z), 1 - p = sigmoid(z)
      const Var p = ad::sigmoid(is_positive ? -z : z);
      terms.push_back(-ad::log(ad::clamp(p, kProbClamp, 1.0 - kProbClamp)));
    }
  }
  return ad::sum(terms) / Var(static_cast<double>(terms.size()));
}

std::vector<double> link_scores(const VarEmbedding& emb, const LgcnConfig& config, std::span<const Edge> pairs) {
  std::vector<double> out;
  out.reserve(pairs.size());
  for (const auto& [i, j] : pairs)
    out.push_back(fermi_dirac_from_sq_distance(embedding_sq_distance(emb, config.geometry, i, j).value, config.r,
                                               config.t));
  return out;
}

Var classification_loss(std::span<const std::vector<Var>> logits, std::span<const int> labels) {
  detail::require(logits.size() == labels.size() && !logits.empty(), "classification_loss: size mismatch or empty");
  std::vector<Var> terms;
  terms.reserve(logits.size());
  std::vector<Var> shifted;
  for (std::size_t k = 0; k < logits.size(); ++k) {
    const auto& z = logits[k];
    const int y = labels[k];
    detail::require(y >= 0 && static_cast<std::size_t>(y) < z.size(),
                    "classification_loss: label " + std::to_string(y) + " out of range");
    double top = z.front().value;
    for (const auto& v : z) top = std::max(top, v.value);
    shifted.clear();
    for (const auto& v : z) shifted.push_back(ad::exp(v - Var(top)));
    const Var lse = ad::log(ad::sum(shifted)) + Var(top);
    terms.push_back(lse - z[static_cast<std::size_t>(y)]);
  }
  return ad::sum(terms) / Var(static_cast<double>(terms.size()));
}

std::vector<int> predict_classes(std::span<const std::vector<Var>> logits) {
  std::vector<int> out;
  out.reserve(logits.size());
  for (const auto& z : logits) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < z.size(); ++c)
      if (z[c].value > z[best].value) best = c;
    out.push_back(static_cast<int>(best));
  }
  return out;
}

double evaluate_auc(std::span<const double> scores, std::span<const int> labels) {
  detail::require(scores.size() == labels.size(), "evaluate_auc: size mismatch");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  // average ranks (1-based) over tie groups
  std::vector<double> rank(scores.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && scores[order[j + 1]] == scores[order[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) rank[order[k]] = avg;
    i = j + 1;
  }
  double pos = 0.0;
  double neg = 0.0;
  double rank_sum = 0.0;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if (labels[k] == 1) {
      pos += 1.0;
      rank_sum += rank[k];
    } else {
      neg += 1.0;
    }
  }
  if (pos == 0.0 || neg == 0.0) throw UndefinedMetric("evaluate_auc: both classes must be present");
  return (rank_sum - pos * (pos + 1.0) / 2.0) / (pos * neg);
}

double accuracy(std::span<const int> predicted, std::span<const int> labels) {
  detail::require(predicted.size() == labels.size() && !labels.empty(), "accuracy: size mismatch or empty");
  std::size_t hit = 0;
  for (std::size_t k = 0; k < labels.size(); ++k) hit += predicted[k] == labels[k] ? 1 : 0;
  return static_cast<double>(hit) / static_cast<double>(labels.size());
}

}  // namespace lgcn::model
