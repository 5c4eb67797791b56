#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

#include "lgcn/errors.hpp"
#include "lgcn/graph/distances.hpp"
#include "lgcn/graph/distortion.hpp"
#include "lgcn/graph/graph.hpp"
#include "lgcn/graph/hyperbolicity.hpp"
#include "lgcn/graph/synthetic.hpp"
#include "lgcn/manifold/hyperboloid.hpp"
#include "lgcn/model/serialize.hpp"
#include "lgcn/model/trainer.hpp"

namespace lgcn::cli {
namespace {

using model::Json;

void ensure_directory(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ParseError(dir, 0, "cannot create output directory: " + ec.message());
}

std::string join(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

/// Config file first, then any flag given on the command line.
model::RunConfig effective_config(const TrainArgs& a) {
  model::RunConfig c = a.config ? model::read_run_config(*a.config) : model::RunConfig{};
  Json overrides = Json::object();
  if (a.task) overrides["task"] = *a.task;
  if (a.geometry) overrides["geometry"] = *a.geometry;
  if (a.activation) overrides["activation"] = *a.activation;
  if (a.seed) overrides["seed"] = *a.seed;
  if (a.dim) overrides["dim"] = *a.dim;
  if (a.layers) overrides["layers"] = *a.layers;
  if (a.lr) overrides["lr"] = *a.lr;
  if (a.dropconnect) overrides["dropconnect"] = *a.dropconnect;
  if (a.weight_decay) overrides["weight_decay"] = *a.weight_decay;
  if (a.max_epochs) overrides["max_epochs"] = *a.max_epochs;
  if (a.patience) overrides["patience"] = *a.patience;
  if (a.edges) overrides["edges"] = *a.edges;
  if (a.features) overrides["features"] = *a.features;
  if (a.labels) overrides["labels"] = *a.labels;
  if (a.out) overrides["out"] = *a.out;
  model::apply_config_json(overrides, c);
  if (c.edges.empty()) throw ConfigError("no edge file given (--edges or config key 'edges')");
  if (c.layers == 0) throw ConfigError("layers must be >= 1");
  return c;
}

HyperbolicityMode parse_mode(const std::string& text, std::uint64_t seed) {
  if (text == "exact") return HyperbolicityMode::exact();
  constexpr std::string_view prefix = "sampled:";
  if (text.starts_with(prefix)) {
    const std::string count = text.substr(prefix.size());
    std::size_t used = 0;
    long long m = -1;
    try {
      m = std::stoll(count, &used);
    } catch (const std::exception&) {
    }
    if (used == count.size() && m > 0) return HyperbolicityMode::sampled(static_cast<std::size_t>(m), seed);
  }
  throw ConfigError("--hyperbolicity must be 'exact', 'sampled:<m>' or 'none', got '" + text + "'");
}

}  // namespace

int fail(int code, const std::string& what) {
  std::cerr << "error: " << what << '\n';
  return code;
}

void add_train(CLI::App& app, TrainArgs& a) {
  auto* cmd = app.add_subcommand("train", "Train an LGCN for link prediction or node classification");
  cmd->add_option("--config", a.config, "JSON run config; flags override its keys");
  cmd->add_option("--task", a.task, "lp | nc");
  cmd->add_option("--geometry", a.geometry, "lorentz | euclidean (baseline)");
  cmd->add_option("--activation", a.activation, "relu | leaky_relu[:slope]");
  cmd->add_option("--seed", a.seed);
  cmd->add_option("--dim", a.dim, "width of every layer");
  cmd->add_option("--layers", a.layers);
  cmd->add_option("--lr", a.lr);
  cmd->add_option("--dropconnect", a.dropconnect);
  cmd->add_option("--weight-decay", a.weight_decay);
  cmd->add_option("--max-epochs", a.max_epochs);
  cmd->add_option("--patience", a.patience);
  cmd->add_option("--edges", a.edges, "edge CSV");
  cmd->add_option("--features", a.features, "feature CSV");
  cmd->add_option("--labels", a.labels, "label CSV");
  cmd->add_option("--out", a.out, "output directory");
}

void add_analyze(CLI::App& app, AnalyzeArgs& a) {
  auto* cmd = app.add_subcommand("analyze", "Graph hyperbolicity and embedding distortion");
  cmd->add_option("graph", a.edges, "edge CSV")->required();
  cmd->add_option("--hyperbolicity", a.hyperbolicity, "exact | sampled:<m> | none")->capture_default_str();
  cmd->add_option("--seed", a.seed, "seed for sampled hyperbolicity")->capture_default_str();
  cmd->add_option("--distortion", a.distortion, "embeddings JSON written by train");
  cmd->add_option("--out", a.out, "write the report here as well as to stdout");
}

void add_gen(CLI::App& app, GenArgs& a) {
  auto* cmd = app.add_subcommand("gen", "Generate a synthetic dataset");
  cmd->require_subcommand(1);
  auto common = [&a](CLI::App* sub) {
    sub->add_option("--features", a.features, "onehot | label | ancestry")->capture_default_str();
    sub->add_option("--noise", a.noise, "noise std-dev for label features")->capture_default_str();
    sub->add_option("--seed", a.seed)->capture_default_str();
    sub->add_option("--out", a.out, "output directory")->capture_default_str();
  };
  auto* tree = cmd->add_subcommand("tree", "Complete tree");
  tree->add_option("--depth", a.depth)->capture_default_str();
  tree->add_option("--branching", a.branching)->capture_default_str();
  common(tree);
  tree->callback([&a] { a.kind = "tree"; });
  auto* blocks = cmd->add_subcommand("blocks", "Stochastic block model");
  blocks->add_option("--n", a.n)->capture_default_str();
  blocks->add_option("--blocks", a.blocks)->capture_default_str();
  blocks->add_option("--p-in", a.p_in)->capture_default_str();
  blocks->add_option("--p-out", a.p_out)->capture_default_str();
  common(blocks);
  blocks->callback([&a] { a.kind = "blocks"; });
}

int run_train(const TrainArgs& args) {
  model::RunConfig config;
  try {
    config = effective_config(args);
  } catch (const ConfigError& e) {
    return fail(kConfigError, e.what());
  }

  Graph graph;
  try {
    graph = load_graph(config.edges, config.features, config.labels);
  } catch (const ParseError& e) {
    return fail(kDataError, e.what());
  }

  try {
    config.resolve_dims(graph.features_or_identity().cols);
    config.model.validate();
  } catch (const ContractViolation& e) {
    return fail(kConfigError, e.what());
  }
  if (config.model.task == model::Task::kNodeClassification && !graph.has_labels())
    return fail(kConfigError, "task nc needs a label file (--labels)");

  std::optional<model::TrainResult> trained;
  try {
    trained = model::train(graph, config.model);
  } catch (const UndefinedMetric& e) {
    return fail(kUndefinedMetric, e.what());
  } catch (const ContractViolation& e) {
    return fail(kDataError, config.edges + ": " + e.what());
  }
  const auto& result = *trained;

  try {
    ensure_directory(config.out);
    {
      std::ofstream metrics(join(config.out, "metrics.jsonl"), std::ios::binary);
      if (!metrics) throw ParseError(join(config.out, "metrics.jsonl"), 0, "cannot open for writing");
      for (const auto& rec : result.history) metrics << model::epoch_to_json(rec).dump() << '\n';
    }
    model::write_json(join(config.out, "checkpoint.json"), model::checkpoint_to_json(result.network));
    model::write_json(join(config.out, "embeddings.json"), model::embeddings_to_json(model::embeddings_of(result)));
    const auto report = model::report_to_json(result, config);
    model::write_json(join(config.out, "report.json"), report);
    std::cout << model::dump_json(report);
  } catch (const ParseError& e) {
    return fail(kDataError, e.what());
  }
  return kOk;
}

int run_analyze(const AnalyzeArgs& args) {
  std::optional<HyperbolicityMode> mode;
  if (args.hyperbolicity != "none") {
    try {
      mode = parse_mode(args.hyperbolicity, args.seed);
    } catch (const ConfigError& e) {
      return fail(kConfigError, e.what());
    }
  }

  Graph graph;
  std::optional<model::Embeddings> embeddings;
  try {
    graph = load_graph(args.edges);
    if (args.distortion) embeddings = model::read_embeddings(*args.distortion);
  } catch (const ParseError& e) {
    return fail(kDataError, e.what());
  }

  Json report = Json::object();
  const auto distances = all_pairs_distances(graph.adjacency);
  try {
    if (mode) {
      const auto h = delta_hyperbolicity(distances, *mode);
      report["delta_avg"] = h.delta_avg;
      report["delta_worst"] = h.delta_worst;
      report["mode"] = h.mode;
      report["samples"] = h.quadruples + h.skipped;
      report["quadruples"] = h.quadruples;
      report["skipped"] = h.skipped;
    }
    if (embeddings) {
      if (embeddings->points.size() != graph.node_count())
        return fail(kDataError, *args.distortion + ": " + std::to_string(embeddings->points.size()) +
                                    " points for a graph of " + std::to_string(graph.node_count()) + " nodes");
      double distortion = 0.0;
      if (embeddings->geometry == model::Geometry::kLorentz) {
        const Curvature curvature(embeddings->beta);
        std::vector<HyperPoint> points;
        for (auto& p : embeddings->points) points.push_back(HyperPoint::from_coords(std::move(p), curvature));
        distortion = average_distortion(std::span<const HyperPoint>(points), distances);
      } else {
        Matrix m(embeddings->points.size(), embeddings->points.front().size());
        for (std::size_t i = 0; i < m.rows; ++i)
          for (std::size_t c = 0; c < m.cols; ++c) m(i, c) = embeddings->points[i][c];
        distortion = average_distortion(m, distances);
      }
      report["distortion"] = distortion;
    }
  } catch (const UndefinedMetric& e) {
    return fail(kUndefinedMetric, e.what());
  } catch (const ContractViolation& e) {
    return fail(kConfigError, e.what());
  } catch (const DomainError& e) {
    return fail(kDataError, *args.distortion + ": " + e.what());
  }

  const std::string text = model::dump_json(report);
  std::cout << text;
  if (args.out) {
    try {
      model::write_json(*args.out, report);
    } catch (const ParseError& e) {
      return fail(kDataError, e.what());
    }
  }
  return kOk;
}

int run_gen(const GenArgs& args) {
  Graph graph;
  try {
    const FeatureOptions features{parse_feature_mode(args.features), args.noise};
    graph = args.kind == "tree" ? make_tree(args.depth, args.branching, features, args.seed)
                                : make_blocks(args.n, args.blocks, args.p_in, args.p_out, features, args.seed);
  } catch (const ContractViolation& e) {
    return fail(kConfigError, e.what());
  }
  try {
    ensure_directory(args.out);
    write_edges_csv(join(args.out, "edges.csv"), graph.adjacency);
    write_features_csv(join(args.out, "features.csv"), graph.features_or_identity());
    write_labels_csv(join(args.out, "labels.csv"), graph.labels);
  } catch (const ParseError& e) {
    return fail(kDataError, e.what());
  }
  std::cout << "wrote " << graph.node_count() << " nodes, " << graph.adjacency.edge_count() << " edges to "
            << args.out << '\n';
  return kOk;
}

}  // namespace lgcn::cli
