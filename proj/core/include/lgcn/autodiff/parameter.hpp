#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "lgcn/autodiff/tape.hpp"

namespace lgcn::ad {

/// Row-major Euclidean tensor of trainable values with a matching gradient
/// buffer. Weight matrices act on tangent-space coordinates at the origin.
struct Parameter {
  std::string name;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;
  std::vector<double> grads;
  bool trainable = true;

  Parameter() = default;
  Parameter(std::string name, std::size_t rows, std::size_t cols);

  std::size_t size() const noexcept { return values.size(); }
  double& at(std::size_t r, std::size_t c) { return values[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }

  /// Leaves on `tape` (or constants when not trainable / no tape).
  std::vector<Var> bind(Tape* tape) const;
  /// Adds tape gradients of `bound` into `grads`.
  void accumulate_grads(const Tape& tape, std::span<const Var> bound);
  void zero_grad();
};

/// Trainable curvature. beta = softplus(theta) + kMinBeta is positive for every
/// finite theta.
class CurvatureParam {
 public:
  static constexpr double kMinBeta = 1e-4;

  CurvatureParam() : CurvatureParam(from_beta(1.0)) {}
  explicit CurvatureParam(double theta) : theta_(theta) {}

  static CurvatureParam from_beta(double beta);

  double theta() const noexcept { return theta_; }
  double& theta() noexcept { return theta_; }
  double beta() const;
  static Var beta(const Var& theta);

 private:
  double theta_;
};

}  // namespace lgcn::ad
