#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lgcn/adjacency.hpp"
#include "lgcn/graph/graph.hpp"
#include "lgcn/graph/splits.hpp"
#include "lgcn/manifold/hyperboloid.hpp"
#include "lgcn/matrix.hpp"
#include "lgcn/model/config.hpp"
#include "lgcn/model/network.hpp"

namespace lgcn::model {

/// Tracks the best validation metric (higher is better). An epoch improves
/// only if it strictly beats the best so far.
class EarlyStopping {
 public:
  explicit EarlyStopping(std::size_t patience);

  /// Returns true when `metric` is a new best.
  bool observe(std::size_t epoch, double metric);
  /// True once `patience` epochs have passed without improvement.
  bool should_stop(std::size_t epoch) const noexcept;

  std::size_t best_epoch() const noexcept { return best_epoch_; }
  double best_metric() const noexcept { return best_metric_; }

 private:
  std::size_t patience_;
  std::size_t best_epoch_ = 0;
  double best_metric_;
};

struct EpochRecord {
  std::size_t epoch = 0;  ///< 1-based
  double train_loss = 0.0;
  double val_metric = 0.0;
  std::size_t best_epoch = 0;
  double test_metric_at_best = 0.0;
};

struct TrainResult {
  Network network;  ///< parameters restored to the best validation epoch
  std::vector<EpochRecord> history;
  std::size_t best_epoch = 0;
  double best_val_metric = 0.0;
  double test_metric = 0.0;  ///< AUC (LP) or accuracy (NC) at the best epoch
  Adjacency message_graph;   ///< train edges for LP, the full graph for NC
  Matrix features;
};

/// Adam + L2 + DropConnect training with early stopping on validation AUC
/// (link prediction) or accuracy (node classification). Deterministic for a
/// given config.
TrainResult train(const Graph& graph, const LgcnConfig& config);
TrainResult train_link_prediction(const Graph& graph, const LinkSplits& splits, const LgcnConfig& config);
TrainResult train_node_classification(const Graph& graph, const NodeSplits& splits, const LgcnConfig& config);

/// Test-free evaluation helpers on a trained network.
double link_auc(const Network& network, const Matrix& features, const Adjacency& message_graph,
                const std::vector<Edge>& positive, const std::vector<Edge>& negative);
double node_accuracy(const Network& network, const Matrix& features, const Adjacency& message_graph,
                     const std::vector<NodeId>& nodes, const std::vector<int>& labels);

}  // namespace lgcn::model
