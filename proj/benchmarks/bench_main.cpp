#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "lgcn/graph/hyperbolicity.hpp"
#include "lgcn/graph/synthetic.hpp"
#include "lgcn/manifold/hyperboloid.hpp"
#include "lgcn/manifold/poincare.hpp"
#include "lgcn/model/heads.hpp"
#include "lgcn/model/network.hpp"
#include "lgcn/ops/lorentz_ops.hpp"
#include "lgcn/util/rng.hpp"

using namespace lgcn;

namespace {

std::vector<double> gaussian(Rng& rng, std::size_t n, double scale) {
  std::vector<double> v(n);
  for (auto& x : v) x = scale * standard_normal(rng);
  return v;
}

HyperPoint random_point(Rng& rng, std::size_t n, Curvature c) {
  return exp_origin(TangentVector::from_spatial(gaussian(rng, n, 0.5)), c);
}

Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  return Matrix(rows, cols, gaussian(rng, rows * cols, 1.0 / std::sqrt(static_cast<double>(cols))));
}

void BM_ExpLogOrigin(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  const auto v = TangentVector::from_spatial(gaussian(rng, n, 1.0));
  const Curvature c(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(log_origin(exp_origin(v, c)));
}
BENCHMARK(BM_ExpLogOrigin)->Arg(4)->Arg(16)->Arg(64);

void BM_LorentzMatvec(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(2);
  const Curvature c(1.0);
  const auto x = random_point(rng, n, c);
  const auto m = random_matrix(rng, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(lorentz_matvec(m, x));
}
BENCHMARK(BM_LorentzMatvec)->Arg(4)->Arg(16)->Arg(64);

void BM_MobiusMatvec(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(3);
  const auto y = hyperboloid_to_ball(random_point(rng, n, Curvature(1.0)));
  const auto m = random_matrix(rng, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(mobius_matvec(m, y));
}
BENCHMARK(BM_MobiusMatvec)->Arg(4)->Arg(16)->Arg(64);

void BM_Centroid(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  Rng rng(4);
  const Curvature c(1.0);
  std::vector<HyperPoint> pts;
  std::vector<double> w;
  for (std::size_t j = 0; j < k; ++j) {
    pts.push_back(random_point(rng, 16, c));
    w.push_back(uniform(rng, 0.1, 1.0));
  }
  for (auto _ : state) benchmark::DoNotOptimize(lorentz_centroid(pts, w));
}
BENCHMARK(BM_Centroid)->Arg(4)->Arg(32)->Arg(256);

void BM_LayerForward(benchmark::State& state) {
  const auto g = make_tree(static_cast<std::size_t>(state.range(0)), 2, {}, 5);
  Rng rng(5);
  const Curvature c(1.0);
  std::vector<HyperPoint> features;
  for (std::size_t i = 0; i < g.node_count(); ++i) features.push_back(random_point(rng, 16, c));
  const LayerWeights w{random_matrix(rng, 16, 16), random_matrix(rng, 16, 16)};
  for (auto _ : state)
    benchmark::DoNotOptimize(lgcn_layer_forward(features, w, Activation::leaky_relu(0.2), c, g.adjacency));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.node_count()));
}
BENCHMARK(BM_LayerForward)->Arg(6)->Arg(9);

void BM_TrainStep(benchmark::State& state) {
  const auto g = make_tree(static_cast<std::size_t>(state.range(0)), 2, {FeatureMode::kAncestry, 0.0}, 6);
  model::LgcnConfig config;
  config.dims = {g.features.cols, 16, 16};
  model::Network net(config);
  std::vector<Edge> pos = g.adjacency.edges();
  std::vector<Edge> neg;
  for (const auto& [u, v] : pos) neg.emplace_back(u, static_cast<NodeId>((v * 7 + 3) % g.node_count()));
  std::erase_if(neg, [&](const Edge& e) { return e.first == e.second || g.adjacency.has_edge(e.first, e.second); });
  ad::Tape tape;
  for (auto _ : state) {
    tape.clear();
    const auto bound = net.bind(&tape);
    const auto loss = model::link_prediction_loss(net.forward(bound, g.features, g.adjacency), config, pos, neg);
    tape.backward(loss);
    benchmark::DoNotOptimize(net.collect_grads(tape, bound));
  }
}
BENCHMARK(BM_TrainStep)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_HyperbolicitySampled(benchmark::State& state) {
  const auto g = make_blocks(500, 5, 0.05, 0.005, {}, 7);
  const auto mode = HyperbolicityMode::sampled(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(delta_hyperbolicity(g.adjacency, mode));
}
BENCHMARK(BM_HyperbolicitySampled)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
