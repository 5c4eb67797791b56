#include "lgcn/model/serialize.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "lgcn/errors.hpp"

namespace lgcn::model {
namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "task",        "geometry",   "dim",    "layers",   "activation", "attention", "tie_curvature",
      "train_curvature", "init_beta", "dropconnect", "lr", "weight_decay", "max_epochs", "patience",
      "seed",        "r",          "t",      "edges",    "features",   "labels",    "out"};
  return keys;
}

double get_number(const Json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError("config key '" + key + "' must be a number");
  return v.get<double>();
}

std::size_t get_count(const Json& v, const std::string& key) {
  if (!v.is_number_integer() || (v.is_number_integer() && v.get<std::int64_t>() < 0))
    throw ConfigError("config key '" + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

bool get_bool(const Json& v, const std::string& key) {
  if (!v.is_boolean()) throw ConfigError("config key '" + key + "' must be a boolean");
  return v.get<bool>();
}

std::string get_string(const Json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError("config key '" + key + "' must be a string");
  return v.get<std::string>();
}

template <class Fn>
auto rethrow_as_config(const std::string& key, Fn&& fn) {
  try {
    return fn();
  } catch (const ContractViolation& e) {
    throw ConfigError("config key '" + key + "': " + e.what());
  }
}

}  // namespace

void RunConfig::resolve_dims(std::size_t input_width) {
  model.dims.assign(1, input_width);
  model.dims.insert(model.dims.end(), layers, dim);
}

void apply_config_json(const Json& doc, RunConfig& c) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, v] : doc.items()) {
    if (!known_keys().contains(key)) throw ConfigError("unknown config key '" + key + "'");
    auto& m = c.model;
    if (key == "task") m.task = rethrow_as_config(key, [&] { return parse_task(get_string(v, key)); });
    else if (key == "geometry") m.geometry = rethrow_as_config(key, [&] { return parse_geometry(get_string(v, key)); });
    else if (key == "dim") c.dim = get_count(v, key);
    else if (key == "layers") c.layers = get_count(v, key);
    else if (key == "activation") m.activation = rethrow_as_config(key, [&] { return Activation::parse(get_string(v, key)); });
    else if (key == "attention") m.attention = get_bool(v, key);
    else if (key == "tie_curvature") m.tie_curvature = get_bool(v, key);
    else if (key == "train_curvature") m.train_curvature = get_bool(v, key);
    else if (key == "init_beta") m.init_beta = get_number(v, key);
    else if (key == "dropconnect") m.dropconnect = get_number(v, key);
    else if (key == "lr") m.lr = get_number(v, key);
    else if (key == "weight_decay") m.weight_decay = get_number(v, key);
    else if (key == "max_epochs") m.max_epochs = get_count(v, key);
    else if (key == "patience") m.patience = get_count(v, key);
    else if (key == "seed") m.seed = get_count(v, key);
    else if (key == "r") m.r = get_number(v, key);
    else if (key == "t") m.t = get_number(v, key);
    else if (key == "edges") c.edges = get_string(v, key);
    else if (key == "features") c.features = get_string(v, key);
    else if (key == "labels") c.labels = get_string(v, key);
    else if (key == "out") c.out = get_string(v, key);
  }
}

RunConfig read_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  RunConfig c;
  apply_config_json(doc, c);
  return c;
}

Json config_to_json(const RunConfig& c) {
  const auto& m = c.model;
  Json j;
  j["task"] = task_name(m.task);
  j["geometry"] = geometry_name(m.geometry);
  j["dim"] = c.dim;
  j["layers"] = c.layers;
  j["activation"] = m.activation.tag();
  j["attention"] = m.attention;
  j["tie_curvature"] = m.tie_curvature;
  j["train_curvature"] = m.train_curvature;
  j["init_beta"] = m.init_beta;
  j["dropconnect"] = m.dropconnect;
  j["lr"] = m.lr;
  j["weight_decay"] = m.weight_decay;
  j["max_epochs"] = m.max_epochs;
  j["patience"] = m.patience;
  j["seed"] = m.seed;
  j["r"] = m.r;
  j["t"] = m.t;
  j["edges"] = c.edges;
  if (c.features) j["features"] = *c.features;
  if (c.labels) j["labels"] = *c.labels;
  j["out"] = c.out;
  return j;
}

Json epoch_to_json(const EpochRecord& r) {
  Json j;
  j["epoch"] = r.epoch;
  j["train_loss"] = r.train_loss;
  j["val_metric"] = r.val_metric;
  j["best_epoch"] = r.best_epoch;
  j["test_metric_at_best"] = r.test_metric_at_best;
  return j;
}

Json checkpoint_to_json(const Network& network) {
  Json j;
  Json tensors = Json::array();
  for (const auto& p : network.parameters()) {
    Json t;
    t["name"] = p.name;
    t["rows"] = p.rows;
    t["cols"] = p.cols;
    t["values"] = p.values;
    tensors.push_back(std::move(t));
  }
  j["tensors"] = std::move(tensors);
  Json thetas = Json::array();
  Json betas = Json::array();
  for (const auto& c : network.curvatures()) {
    thetas.push_back(c.theta());
    betas.push_back(c.beta());
  }
  j["theta"] = std::move(thetas);
  j["beta"] = std::move(betas);
  return j;
}

void load_checkpoint(const Json& doc, Network& network) {
  try {
    const auto& tensors = doc.at("tensors");
    auto& params = network.parameters();
    if (tensors.size() != params.size()) throw ConfigError("checkpoint: tensor count does not match the network");
    for (std::size_t k = 0; k < params.size(); ++k) {
      const auto& t = tensors[k];
      if (t.at("name").get<std::string>() != params[k].name || t.at("rows").get<std::size_t>() != params[k].rows ||
          t.at("cols").get<std::size_t>() != params[k].cols)
        throw ConfigError("checkpoint: tensor '" + params[k].name + "' is missing or mis-shaped");
      auto values = t.at("values").get<std::vector<double>>();
      if (values.size() != params[k].size()) throw ConfigError("checkpoint: tensor '" + params[k].name + "' size");
      params[k].values = std::move(values);
    }
    const auto thetas = doc.at("theta").get<std::vector<double>>();
    if (thetas.size() != network.curvatures().size()) throw ConfigError("checkpoint: curvature count mismatch");
    for (std::size_t k = 0; k < thetas.size(); ++k) network.curvatures()[k].theta() = thetas[k];
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("checkpoint: ") + e.what());
  }
}

Embeddings embeddings_of(const TrainResult& result) {
  Embeddings e;
  e.geometry = result.network.config().geometry;
  if (e.geometry == Geometry::kLorentz) {
    const auto points = result.network.embed(result.features, result.message_graph);
    e.beta = points.empty() ? result.network.layer_beta(result.network.config().layers() - 1) : points.front().beta();
    for (const auto& p : points) e.points.emplace_back(p.coords().begin(), p.coords().end());
  } else {
    const auto m = result.network.embed_euclidean(result.features, result.message_graph);
    for (std::size_t i = 0; i < m.rows; ++i) e.points.emplace_back(m.row(i).begin(), m.row(i).end());
  }
  return e;
}

Json embeddings_to_json(const Embeddings& e) {
  Json j;
  j["geometry"] = geometry_name(e.geometry);
  if (e.geometry == Geometry::kLorentz) j["beta"] = e.beta;
  j["points"] = e.points;
  return j;
}

Embeddings read_embeddings(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open embeddings file");
  Embeddings e;
  try {
    const Json doc = Json::parse(in);
    e.geometry = parse_geometry(doc.at("geometry").get<std::string>());
    if (e.geometry == Geometry::kLorentz) e.beta = doc.at("beta").get<double>();
    e.points = doc.at("points").get<std::vector<std::vector<double>>>();
  } catch (const Json::exception& ex) {
    throw ParseError(path, 0, ex.what());
  } catch (const ContractViolation& ex) {
    throw ParseError(path, 0, ex.what());
  }
  for (const auto& p : e.points)
    if (p.size() != e.points.front().size()) throw ParseError(path, 0, "points have differing dimensions");
  return e;
}

Json report_to_json(const TrainResult& result, const RunConfig& config) {
  const auto& net = result.network;
  Json j;
  j[net.config().task == Task::kLinkPrediction ? "test_auc" : "test_accuracy"] = result.test_metric;
  j["best_epoch"] = result.best_epoch;
  j["best_val_metric"] = result.best_val_metric;
  j["epochs_run"] = result.history.size();
  j["seed"] = net.config().seed;
  Json betas = Json::array();
  for (const auto& c : net.curvatures()) betas.push_back(c.beta());
  j["beta"] = std::move(betas);
  j["dims"] = net.config().dims;
  Json echoed = config_to_json(config);
  echoed.erase("out");
  j["config"] = std::move(echoed);
  return j;
}

std::string dump_json(const Json& doc) { return doc.dump(2) + "\n"; }

void write_json(const std::string& path, const Json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(path, 0, "cannot open for writing");
  out << dump_json(doc);
}

}  // namespace lgcn::model
