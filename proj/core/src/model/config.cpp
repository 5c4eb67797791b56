#include "lgcn/model/config.hpp"

#include <cmath>
#include <string>

#include "lgcn/errors.hpp"

namespace lgcn::model {

Task parse_task(std::string_view name) {
  if (name == "lp" || name == "link_prediction") return Task::kLinkPrediction;
  if (name == "nc" || name == "node_classification") return Task::kNodeClassification;
  throw ContractViolation("unknown task '" + std::string(name) + "' (lp|nc)");
}

std::string_view task_name(Task task) { return task == Task::kLinkPrediction ? "lp" : "nc"; }

Geometry parse_geometry(std::string_view name) {
  if (name == "lorentz") return Geometry::kLorentz;
  if (name == "euclidean") return Geometry::kEuclidean;
  throw ContractViolation("unknown geometry '" + std::string(name) + "' (lorentz|euclidean)");
}

std::string_view geometry_name(Geometry geometry) { return geometry == Geometry::kLorentz ? "lorentz" : "euclidean"; }

void LgcnConfig::validate() const {
  detail::require(dims.size() >= 2, "config: need an input width and at least one layer");
  for (std::size_t d : dims) detail::require(d >= 1, "config: dimensions must be >= 1");
  for (std::size_t l = 1; l < dims.size(); ++l) detail::require(dims[l] >= 2, "config: layer dims must be >= 2");
  detail::require(dropconnect >= 0.0 && dropconnect < 1.0, "config: dropconnect must lie in [0, 1)");
  detail::require(lr > 0.0 && std::isfinite(lr), "config: lr must be positive");
  detail::require(weight_decay >= 0.0, "config: weight_decay must be >= 0");
  detail::require(patience >= 1, "config: patience must be >= 1");
  detail::require(max_epochs >= 1, "config: max_epochs must be >= 1");
  detail::require(r > 0.0 && t > 0.0, "config: decoder r and t must be positive");
  detail::require(init_beta > 1e-4 && std::isfinite(init_beta), "config: init_beta must exceed 1e-4");
}

}  // namespace lgcn::model
