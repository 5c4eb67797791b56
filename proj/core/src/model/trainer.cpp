#include "lgcn/model/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lgcn/autodiff/optim.hpp"
#include "lgcn/autodiff/tape.hpp"
#include "lgcn/errors.hpp"
#include "lgcn/model/heads.hpp"

namespace lgcn::model {
namespace {

struct Snapshot {
  std::vector<std::vector<double>> values;
  std::vector<double> thetas;

  static Snapshot take(const Network& net) {
    Snapshot s;
    for (const auto& p : net.parameters()) s.values.push_back(p.values);
    for (const auto& c : net.curvatures()) s.thetas.push_back(c.theta());
    return s;
  }
  void restore(Network& net) const {
    for (std::size_t k = 0; k < values.size(); ++k) net.parameters()[k].values = values[k];
    for (std::size_t k = 0; k < thetas.size(); ++k) net.curvatures()[k].theta() = thetas[k];
  }
};

/// Adam state for every parameter tensor plus one for the curvatures.
class Optimizer {
 public:
  explicit Optimizer(const Network& net, double lr) : states_(net.parameters().size()) { config_.lr = lr; }

  void step(Network& net, const std::vector<double>& theta_grads) {
    auto& params = net.parameters();
    for (std::size_t k = 0; k < params.size(); ++k)
      if (params[k].trainable) ad::adam_step(params[k].values, params[k].grads, states_[k], config_);
    if (!net.config().train_curvature) return;
    std::vector<double> thetas;
    for (const auto& c : net.curvatures()) thetas.push_back(c.theta());
    ad::adam_step(thetas, theta_grads, theta_state_, config_);
    for (std::size_t k = 0; k < thetas.size(); ++k) net.curvatures()[k].theta() = thetas[k];
  }

 private:
  ad::AdamConfig config_;
  std::vector<ad::AdamState> states_;
  ad::AdamState theta_state_;
};

void zero_grads(Network& net) {
  for (auto& p : net.parameters()) p.zero_grad();
}

std::vector<int> pair_labels(std::size_t positives, std::size_t negatives) {
  std::vector<int> labels(positives, 1);
  labels.resize(positives + negatives, 0);
  return labels;
}

/// Runs the shared epoch loop. `epoch_loss` builds the loss on a fresh tape;
/// `val` and `test` score the current parameters.
template <class LossFn, class ValFn, class TestFn>
void fit(Network& net, TrainResult& result, LossFn&& epoch_loss, ValFn&& val, TestFn&& test) {
  const auto& config = net.config();
  Optimizer opt(net, config.lr);
  EarlyStopping stopper(config.patience);
  auto drop_rng = derive_rng(config.seed, Stream::kDropConnect);
  auto neg_rng = derive_rng(config.seed, Stream::kNegatives);
  Snapshot best = Snapshot::take(net);
  double best_test = 0.0;
  ad::Tape tape;

  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    tape.clear();
    std::vector<std::vector<double>> masks;
    if (config.dropconnect > 0.0) masks = net.draw_masks(drop_rng);
    const auto bound = net.bind(&tape, config.dropconnect > 0.0 ? &masks : nullptr);
    const ad::Var loss = epoch_loss(tape, bound, neg_rng);
    detail::require(std::isfinite(loss.value), "train: loss became non-finite");
    zero_grads(net);
    tape.backward(loss);
    const auto theta_grads = net.collect_grads(tape, bound);
    net.apply_weight_decay();
    opt.step(net, theta_grads);

    const double metric = val(net);
    if (stopper.observe(epoch, metric)) {
      best = Snapshot::take(net);
      best_test = test(net);
    }
    result.history.push_back({epoch, loss.value, metric, stopper.best_epoch(), best_test});
    if (stopper.should_stop(epoch)) break;
  }
  best.restore(net);
  result.best_epoch = stopper.best_epoch();
  result.best_val_metric = stopper.best_metric();
  result.test_metric = best_test;
}

}  // namespace

EarlyStopping::EarlyStopping(std::size_t patience)
    : patience_(patience), best_metric_(-std::numeric_limits<double>::infinity()) {
  detail::require(patience >= 1, "EarlyStopping: patience must be >= 1");
}

bool EarlyStopping::observe(std::size_t epoch, double metric) {
  if (best_epoch_ != 0 && !(metric > best_metric_)) return false;
  best_metric_ = metric;
  best_epoch_ = epoch;
  return true;
}

bool EarlyStopping::should_stop(std::size_t epoch) const noexcept {
  return best_epoch_ != 0 && epoch >= best_epoch_ + patience_;
}

double link_auc(const Network& network, const Matrix& features, const Adjacency& message_graph,
                const std::vector<Edge>& positive, const std::vector<Edge>& negative) {
  const auto emb = network.forward(network.bind(nullptr), features, message_graph);
  auto scores = link_scores(emb, network.config(), positive);
  const auto neg = link_scores(emb, network.config(), negative);
  scores.insert(scores.end(), neg.begin(), neg.end());
  const auto labels = pair_labels(positive.size(), negative.size());
  return evaluate_auc(scores, labels);
}

double node_accuracy(const Network& network, const Matrix& features, const Adjacency& message_graph,
                     const std::vector<NodeId>& nodes, const std::vector<int>& labels) {
  const auto bound = network.bind(nullptr);
  const auto emb = network.forward(bound, features, message_graph);
  const auto predicted = predict_classes(network.logits(bound, emb, nodes));
  std::vector<int> truth;
  truth.reserve(nodes.size());
  for (NodeId i : nodes) truth.push_back(labels[i]);
  return accuracy(predicted, truth);
}

TrainResult train_link_prediction(const Graph& graph, const LinkSplits& splits, const LgcnConfig& config) {
  detail::require(!splits.train.empty() && !splits.val.empty() && !splits.test.empty(),
                  "train_link_prediction: empty edge split");
  detail::require(splits.val_negative.size() > 0 && splits.test_negative.size() > 0,
                  "train_link_prediction: missing negative edges");
  const std::size_t n = graph.node_count();
  TrainResult result{Network(config), {}, 0, 0.0, 0.0, splits.train_graph(n), graph.features_or_identity()};
  const auto& features = result.features;
  const auto& message = result.message_graph;
  std::vector<Edge> negatives(splits.train.size());

  auto loss = [&](ad::Tape&, const BoundParams& bound, Rng& rng) {
    for (auto& e : negatives) e = sample_non_edge(graph.adjacency, rng);
    const auto emb = result.network.forward(bound, features, message);
    return link_prediction_loss(emb, config, splits.train, negatives);
  };
  auto val = [&](const Network& net) { return link_auc(net, features, message, splits.val, splits.val_negative); };
  auto test = [&](const Network& net) {
    return link_auc(net, features, message, splits.test, splits.test_negative);
  };
  fit(result.network, result, loss, val, test);
  return result;
}

TrainResult train_node_classification(const Graph& graph, const NodeSplits& splits, const LgcnConfig& config) {
  detail::require(!splits.train.empty() && !splits.val.empty() && !splits.test.empty(),
                  "train_node_classification: empty node split");
  detail::require(graph.has_labels(), "train_node_classification: graph has no labels");
  TrainResult result{Network(config, graph.class_count()), {}, 0, 0.0, 0.0, graph.adjacency,
                     graph.features_or_identity()};
  const auto& features = result.features;
  const auto& message = result.message_graph;
  std::vector<int> train_labels;
  for (NodeId i : splits.train) train_labels.push_back(graph.labels[i]);

  auto loss = [&](ad::Tape&, const BoundParams& bound, Rng&) {
    const auto emb = result.network.forward(bound, features, message);
    return classification_loss(result.network.logits(bound, emb, splits.train), train_labels);
  };
  auto val = [&](const Network& net) { return node_accuracy(net, features, message, splits.val, graph.labels); };
  auto test = [&](const Network& net) { return node_accuracy(net, features, message, splits.test, graph.labels); };
  fit(result.network, result, loss, val, test);
  return result;
}

TrainResult train(const Graph& graph, const LgcnConfig& config) {
  config.validate();
  if (config.task == Task::kLinkPrediction) return train_link_prediction(graph, make_link_splits(graph, config.seed), config);
  return train_node_classification(graph, make_node_splits(graph, config.seed), config);
}

}  // namespace lgcn::model
