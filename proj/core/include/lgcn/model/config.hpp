#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lgcn/activation.hpp"

namespace lgcn::model {

enum class Task { kLinkPrediction, kNodeClassification };

/// kEuclidean is the ablation baseline: plain mean aggregation over
/// N(i) + {i}, Euclidean matvec and non-linearity, squared Euclidean distance
/// in the decoder, no curvature.
enum class Geometry { kLorentz, kEuclidean };

Task parse_task(std::string_view name);
std::string_view task_name(Task task);
Geometry parse_geometry(std::string_view name);
std::string_view geometry_name(Geometry geometry);

struct LgcnConfig {
  /// [k, d1, ..., dL]: input feature width followed by each layer's output dim.
  std::vector<std::size_t> dims;
  Activation activation = Activation::relu();
  bool attention = true;
  /// One curvature shared by every layer instead of one per layer.
  bool tie_curvature = false;
  bool train_curvature = true;
  double init_beta = 1.0;
  double dropconnect = 0.0;
  double lr = 0.01;
  double weight_decay = 0.0;
  std::size_t max_epochs = 500;
  std::size_t patience = 100;
  std::uint64_t seed = 0;
  Task task = Task::kLinkPrediction;
  Geometry geometry = Geometry::kLorentz;
  /// Fermi-Dirac decoder p = 1 / (exp((d^2 - r) / t) + 1).
  double r = 2.0;
  double t = 1.0;

  std::size_t layers() const noexcept { return dims.empty() ? 0 : dims.size() - 1; }
  std::size_t output_dim() const noexcept { return dims.empty() ? 0 : dims.back(); }

  /// Throws ContractViolation describing the first invalid field.
  void validate() const;
};

}  // namespace lgcn::model
