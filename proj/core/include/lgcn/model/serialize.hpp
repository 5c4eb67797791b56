#pragma once

// JSON artifacts of a training run. Every writer uses insertion-ordered
// objects, so identical inputs give identical bytes.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lgcn/model/config.hpp"
#include "lgcn/model/network.hpp"
#include "lgcn/model/trainer.hpp"

namespace lgcn::model {

using Json = nlohmann::ordered_json;

/// Model config plus dataset paths. `dim` and `layers` expand to
/// dims = [feature width, dim, ..., dim] once the feature width is known.
struct RunConfig {
  LgcnConfig model;
  std::size_t dim = 16;
  std::size_t layers = 2;
  std::string edges;
  std::optional<std::string> features;
  std::optional<std::string> labels;
  std::string out = ".";

  /// Fills model.dims from `dim`, `layers` and the input width.
  void resolve_dims(std::size_t input_width);
};

/// Overlays keys of `doc` onto `config`. Throws ConfigError on unknown keys,
/// wrong types or invalid values.
void apply_config_json(const Json& doc, RunConfig& config);
RunConfig read_run_config(const std::string& path);
Json config_to_json(const RunConfig& config);

/// One metrics.jsonl line.
Json epoch_to_json(const EpochRecord& record);

/// Named tensors plus curvature pre-parameters and the resulting betas.
Json checkpoint_to_json(const Network& network);
/// Loads tensors and thetas into a network built from the same config.
/// Throws ConfigError on missing or mis-shaped tensors.
void load_checkpoint(const Json& doc, Network& network);

struct Embeddings {
  Geometry geometry = Geometry::kLorentz;
  double beta = 1.0;
  std::vector<std::vector<double>> points;
};

Embeddings embeddings_of(const TrainResult& result);
Json embeddings_to_json(const Embeddings& embeddings);
/// Throws ParseError naming `path` on malformed content.
Embeddings read_embeddings(const std::string& path);

/// {test_auc | test_accuracy, best_epoch, seed, ...} plus the effective config
/// without the output directory, so reruns elsewhere give identical bytes.
Json report_to_json(const TrainResult& result, const RunConfig& config);

/// Pretty-printed with a trailing newline.
void write_json(const std::string& path, const Json& doc);
std::string dump_json(const Json& doc);

}  // namespace lgcn::model
