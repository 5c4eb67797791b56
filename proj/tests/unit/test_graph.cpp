#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include <unistd.h>

#include "lgcn/errors.hpp"
#include "lgcn/graph/distances.hpp"
#include "lgcn/graph/distortion.hpp"
#include "lgcn/graph/graph.hpp"
#include "lgcn/graph/hyperbolicity.hpp"
#include "lgcn/graph/splits.hpp"
#include "lgcn/graph/synthetic.hpp"
#include "support.hpp"

using namespace lgcn;
using namespace lgcn::test;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("lgcn_graph_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return (path / name).string();
  }
};

Adjacency path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Adjacency::from_edges(n, e);
}

Adjacency cycle_graph(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i < n; ++i) e.emplace_back(i, static_cast<NodeId>((i + 1) % n));
  return Adjacency::from_edges(n, e);
}

/// Random labelled tree: node i attaches to a uniform earlier node.
Adjacency random_tree(Gen& g, std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 1; i < n; ++i) e.emplace_back(static_cast<NodeId>(std::uniform_int_distribution<NodeId>(0, i - 1)(g)), i);
  return Adjacency::from_edges(n, e);
}

Adjacency random_connected(Gen& g, std::size_t n, double p) {
  auto edges = random_tree(g, n).edges();
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j)
      if (uniform(g, 0.0, 1.0) < p) edges.emplace_back(i, j);
  return Adjacency::from_edges(n, edges);
}

/// Path length between u and v in a tree by walking DFS parent pointers.
int tree_path_length(const Adjacency& t, NodeId u, NodeId v) {
  std::vector<NodeId> parent(t.node_count(), u);
  std::vector<int> depth(t.node_count(), -1);
  std::vector<NodeId> stack{u};
  depth[u] = 0;
  while (!stack.empty()) {
    const NodeId x = stack.back();
    stack.pop_back();
    for (NodeId y : t.neighbors(x))
      if (depth[y] < 0) {
        depth[y] = depth[x] + 1;
        parent[y] = x;
        stack.push_back(y);
      }
  }
  int steps = 0;
  for (NodeId x = v; x != u; x = parent[x]) ++steps;
  return steps;
}

}  // namespace

TEST_CASE("load_graph examples") {
  TempDir dir;
  const auto one = load_graph(dir.write("one.csv", "0,1\n"));
  CHECK(one.node_count() == 2);
  CHECK(one.adjacency.degree(0) == 1);
  CHECK(one.adjacency.degree(1) == 1);

  const auto dup = load_graph(dir.write("dup.csv", "0,1\n1,0\n0,1\n"));
  CHECK(dup.adjacency.edge_count() == 1);

  const auto tri = load_graph(dir.write("tri.csv", "0,1\n1,2\n2,0"));
  CHECK(tri.node_count() == 3);
  for (NodeId i = 0; i < 3; ++i) CHECK(tri.adjacency.degree(i) == 2);

  const auto grown = load_graph(dir.write("e2.csv", "0,1\n"), std::nullopt, dir.write("l2.csv", "4,1\n"));
  CHECK(grown.node_count() == 5);

  const auto commented = load_graph(dir.write("c.csv", "# header\n\n0,1\n"));
  CHECK(commented.adjacency.edge_count() == 1);
}

TEST_CASE("load_graph with features and labels") {
  TempDir dir;
  const auto edges = dir.write("e.csv", "0,1\n1,2\n");
  const auto g = load_graph(edges, dir.write("f.csv", "1,0\n0,1\n0.5,0.5\n3,3\n"), dir.write("l.csv", "0,1\n2,0\n"));
  CHECK(g.node_count() == 4);
  CHECK(g.adjacency.degree(3) == 0);
  CHECK(g.features(2, 0) == 0.5);
  CHECK(g.labels == std::vector<int>{1, kUnlabeled, 0, kUnlabeled});
  CHECK(g.class_count() == 2);
}

TEST_CASE("load_graph errors carry the line number") {
  TempDir dir;
  auto line_of = [](auto&& fn) {
    try {
      fn();
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{9999};
  };
  const auto edges = dir.write("e.csv", "0,1\n1,2\n");
  CHECK(line_of([&] { load_graph(dir.write("bad.csv", "0,1\n1,x\n")); }) == 2);
  CHECK(line_of([&] { load_graph(dir.write("neg.csv", "0,1\n-1,2\n")); }) == 2);
  CHECK(line_of([&] { load_graph(edges, dir.write("rag.csv", "1,0\n0\n1,1\n")); }) == 2);
  CHECK(line_of([&] { load_graph(dir.write("big.csv", "0,1\n1,5\n"), dir.write("f2.csv", "1\n1\n1\n")); }) == 2);
  CHECK(line_of([&] { load_graph(edges, dir.write("f3.csv", "1\n1\n1\n"), dir.write("lab.csv", "0,1\n7,0\n")); }) == 2);
  try {
    load_graph((dir.path / "missing.csv").string());
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("missing.csv") != std::string::npos);
  }
}

TEST_CASE("CSV writers round trip") {
  TempDir dir;
  const auto g = make_blocks(25, 3, 0.4, 0.05, {FeatureMode::kNoisyLabel, 0.3}, 12);
  const auto e = (dir.path / "e.csv").string(), f = (dir.path / "f.csv").string(), l = (dir.path / "l.csv").string();
  write_edges_csv(e, g.adjacency);
  write_features_csv(f, g.features);
  write_labels_csv(l, g.labels);
  const auto back = load_graph(e, f, l);
  CHECK(back.adjacency.edges() == g.adjacency.edges());
  CHECK(back.features.data == g.features.data);
  CHECK(back.labels == g.labels);
}

TEST_CASE("synthetic generators") {
  const auto tree = make_tree(6, 2, {}, 0);
  CHECK(tree.node_count() == 127);
  CHECK(tree.adjacency.edge_count() == 126);
  CHECK(tree.labels[0] == 0);
  CHECK(tree.labels[1] == 0);
  CHECK(tree.labels[2] == 1);
  CHECK(tree.labels[126] == 1);
  CHECK(tree.class_count() == 2);

  const auto anc = make_tree(3, 2, {FeatureMode::kAncestry, 0.0}, 0);
  CHECK(anc.features(6, 6) == 1.0);
  CHECK(anc.features(6, 2) == 1.0);
  CHECK(anc.features(6, 0) == 1.0);
  CHECK(anc.features(6, 1) == 0.0);

  const auto a = make_blocks(40, 2, 0.3, 0.02, {}, 3);
  const auto b = make_blocks(40, 2, 0.3, 0.02, {}, 3);
  CHECK(a.adjacency.edges() == b.adjacency.edges());
  CHECK(a.labels == b.labels);
  CHECK_THROWS_AS(make_tree(0, 2, {}, 0), ContractViolation);
  CHECK_THROWS_AS(make_blocks(40, 2, 1.5, 0.0, {}, 0), ContractViolation);
  CHECK_THROWS_AS(parse_feature_mode("random"), ContractViolation);
}

TEST_CASE("link splits") {
  Gen g(61);
  std::vector<Edge> edges;
  std::set<Edge> seen;
  while (edges.size() < 100) {
    const auto a = static_cast<NodeId>(uniform_index(g, 40));
    const auto b = static_cast<NodeId>(uniform_index(g, 40));
    if (a == b) continue;
    const Edge e{std::min(a, b), std::max(a, b)};
    if (seen.insert(e).second) edges.push_back(e);
  }
  Graph graph;
  graph.adjacency = Adjacency::from_edges(40, edges);
  const auto s = make_link_splits(graph, 1);
  CHECK(s.train.size() == 85);
  CHECK(s.val.size() == 5);
  CHECK(s.test.size() == 10);
  CHECK(s.val_negative.size() == 5);
  CHECK(s.test_negative.size() == 10);

  std::set<Edge> all(s.train.begin(), s.train.end());
  all.insert(s.val.begin(), s.val.end());
  all.insert(s.test.begin(), s.test.end());
  CHECK(all.size() == 100);
  std::set<Edge> negatives;
  for (const auto* set : {&s.val_negative, &s.test_negative})
    for (const auto& [u, v] : *set) {
      CHECK(u != v);
      CHECK_FALSE(graph.adjacency.has_edge(u, v));
      CHECK(negatives.insert({std::min(u, v), std::max(u, v)}).second);
    }

  const auto again = make_link_splits(graph, 1);
  CHECK(again.train == s.train);
  CHECK(again.test_negative == s.test_negative);
  const auto train_graph = s.train_graph(40);
  for (const auto& [u, v] : s.test) CHECK_FALSE(train_graph.has_edge(u, v));
}

TEST_CASE("node splits") {
  const auto g = make_blocks(200, 2, 0.05, 0.01, {}, 2);
  const auto s = make_node_splits(g, 3, {20, 50, 100});
  CHECK_FALSE(s.proportional);
  CHECK(s.train.size() == 40);
  CHECK(s.val.size() == 50);
  CHECK(s.test.size() == 100);
  std::set<NodeId> all(s.train.begin(), s.train.end());
  all.insert(s.val.begin(), s.val.end());
  all.insert(s.test.begin(), s.test.end());
  CHECK(all.size() == 190);
  std::vector<int> per_class(2, 0);
  for (NodeId i : s.train) ++per_class[g.labels[i]];
  CHECK(per_class == std::vector<int>{20, 20});
  CHECK(make_node_splits(g, 3, {20, 50, 100}).test == s.test);

  const auto small = make_node_splits(make_tree(6, 2, {}, 0), 3);
  CHECK(small.proportional);

  Graph tiny = make_blocks(50, 2, 0.2, 0.05, {}, 1);
  for (auto& l : tiny.labels) l = 0;
  for (int i = 0; i < 5; ++i) tiny.labels[i] = 1;
  try {
    make_node_splits(tiny, 1, {20, 5, 5});
    FAIL("expected an error naming the class");
  } catch (const ContractViolation& e) {
    CHECK(std::string(e.what()).find("class 1") != std::string::npos);
  }
}

TEST_CASE("all pairs distances") {
  const auto p4 = all_pairs_distances(path_graph(4));
  CHECK(p4(0, 3) == 3);
  const auto c4 = all_pairs_distances(cycle_graph(4));
  CHECK(c4(0, 2) == 2);
  CHECK(c4(1, 3) == 2);
  const auto split = all_pairs_distances(Adjacency::from_edges(4, std::vector<Edge>{{0, 1}, {2, 3}}));
  CHECK(split(0, 2) == DistanceMatrix::kUnreachable);
  CHECK_FALSE(split.reachable(1, 3));

  Gen g(62);
  for (int trial = 0; trial < 20; ++trial) {
    const auto t = random_tree(g, 30);
    const auto d = all_pairs_distances(t);
    for (NodeId u = 0; u < 30; u += 3)
      for (NodeId v = 0; v < 30; ++v) CHECK(d(u, v) == tree_path_length(t, u, v));
  }
}

TEST_CASE("four-point delta") {
  const auto p4 = all_pairs_distances(path_graph(4));
  CHECK(delta_quadruple(p4, 0, 1, 2, 3).value() == 0.0);
  const auto c4 = all_pairs_distances(cycle_graph(4));
  CHECK(delta_quadruple(c4, 0, 1, 2, 3).value() == 1.0);
  const auto k4 = all_pairs_distances(Adjacency::from_edges(4, std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}));
  CHECK(delta_quadruple(k4, 0, 1, 2, 3).value() == 0.0);
  const auto split = all_pairs_distances(Adjacency::from_edges(4, std::vector<Edge>{{0, 1}, {2, 3}}));
  CHECK_FALSE(delta_quadruple(split, 0, 1, 2, 3).has_value());
  CHECK_THROWS_AS(delta_quadruple(c4, 0, 0, 2, 3), ContractViolation);

  Gen g(63);
  const auto d = all_pairs_distances(random_connected(g, 12, 0.2));
  std::array<NodeId, 4> q{1, 4, 7, 10};
  const double ref = delta_quadruple(d, q[0], q[1], q[2], q[3]).value();
  do {
    CHECK(delta_quadruple(d, q[0], q[1], q[2], q[3]).value() == ref);
  } while (std::next_permutation(q.begin(), q.end()));
}

TEST_CASE("delta hyperbolicity exact and sampled") {
  const auto c4 = delta_hyperbolicity(cycle_graph(4), HyperbolicityMode::exact());
  CHECK(c4.delta_avg == 1.0);
  CHECK(c4.delta_worst == 1.0);
  CHECK(c4.quadruples == 1);
  CHECK_THROWS_AS(delta_hyperbolicity(path_graph(3), HyperbolicityMode::exact()), UndefinedMetric);
  CHECK_THROWS_AS(delta_hyperbolicity(path_graph(31), HyperbolicityMode::exact()), ContractViolation);
  CHECK_THROWS_AS(delta_hyperbolicity(Adjacency::from_edges(4, std::vector<Edge>{{0, 1}, {2, 3}}), HyperbolicityMode::exact()),
                  UndefinedMetric);

  Gen g(64);
  for (int trial = 0; trial < 20; ++trial) {
    const auto t = random_tree(g, 4 + trial % 9);
    CHECK(delta_hyperbolicity(t, HyperbolicityMode::exact()).delta_avg == 0.0);
  }
  CHECK(delta_hyperbolicity(make_tree(6, 2, {}, 0).adjacency, HyperbolicityMode::sampled(5000, 1)).delta_avg == 0.0);

  for (int trial = 0; trial < 5; ++trial) {
    const auto graph = random_connected(g, 20 + trial * 2, 0.1);
    const double exact = delta_hyperbolicity(graph, HyperbolicityMode::exact()).delta_avg;
    const double sampled = delta_hyperbolicity(graph, HyperbolicityMode::sampled(10000, trial)).delta_avg;
    CHECK(std::abs(exact - sampled) <= 0.05);
  }
}

TEST_CASE("sampled delta is unbiased") {
  Gen g(65);
  const auto graph = random_connected(g, 16, 0.15);
  const double exact = delta_hyperbolicity(graph, HyperbolicityMode::exact()).delta_avg;
  std::vector<double> runs;
  for (int r = 0; r < 100; ++r) runs.push_back(delta_hyperbolicity(graph, HyperbolicityMode::sampled(500, 1000 + r)).delta_avg);
  const double mean = std::accumulate(runs.begin(), runs.end(), 0.0) / runs.size();
  double var = 0.0;
  for (double x : runs) var += (x - mean) * (x - mean);
  const double se = std::sqrt(var / (runs.size() - 1)) / std::sqrt(static_cast<double>(runs.size()));
  CHECK(std::abs(mean - exact) <= 3.0 * se);
}

TEST_CASE("sampled delta does not depend on the thread count") {
  Gen g(66);
  const auto graph = random_connected(g, 25, 0.1);
  const auto mode = HyperbolicityMode::sampled(20000, 4);
  const double a = delta_hyperbolicity(graph, mode).delta_avg;
  ::setenv("LGCN_THREADS", "1", 1);
  const double b = delta_hyperbolicity(graph, mode).delta_avg;
  ::unsetenv("LGCN_THREADS");
  CHECK(a == b);
}

TEST_CASE("average distortion") {
  const std::vector<double> graph_d{1.0, 2.0, 3.0};
  CHECK(average_distortion(std::vector<double>{0.5, 1.0, 1.5}, graph_d) == doctest::Approx(0.0).epsilon(1e-15));
  // Normalised ratios 2 and 1/2: embedding {2, 1} vs graph {1, 2} share the same average.
  CHECK(average_distortion(std::vector<double>{2.0, 1.0}, std::vector<double>{1.0, 2.0}) ==
        doctest::Approx(oracle::kDistortionTwoHalf).epsilon(1e-15));
  const std::vector<double> e{0.3, 1.7, 2.2, 0.9};
  const std::vector<double> gd{1.0, 2.0, 2.0, 1.0};
  std::vector<double> scaled(e);
  for (auto& x : scaled) x *= 13.0;
  CHECK(average_distortion(scaled, gd) == doctest::Approx(average_distortion(e, gd)).epsilon(1e-13));
  CHECK(average_distortion(e, gd) >= 0.0);
  CHECK_THROWS_AS(average_distortion(std::vector<double>{0.0, 0.0}, std::vector<double>{1.0, 1.0}), UndefinedMetric);

  // Points on a geodesic at spacing proportional to path distance have zero distortion.
  const Curvature c(1.0);
  std::vector<HyperPoint> line;
  for (int i = 0; i < 5; ++i) line.push_back(exp_origin(TangentVector::from_spatial({0.7 * i, 0.0}), c));
  CHECK(average_distortion(std::span<const HyperPoint>(line), all_pairs_distances(path_graph(5))) <= 1e-20);
  Matrix flat(5, 2);
  for (int i = 0; i < 5; ++i) flat(i, 1) = 3.0 * i;
  CHECK(average_distortion(flat, all_pairs_distances(path_graph(5))) <= 1e-20);
  const auto isolated = all_pairs_distances(Adjacency::from_edges(2, std::vector<Edge>{}));
  CHECK_THROWS_AS(average_distortion(std::span<const HyperPoint>(line.data(), 2), isolated), UndefinedMetric);
}
