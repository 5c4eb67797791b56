#pragma once

#include <string>
#include <string_view>

namespace lgcn {

/// Pointwise non-linearity tag. Only positively homogeneous activations are
/// admitted (relu, leaky relu with slope in (0, 1)); for those the hyperboloid
/// and Poincare-ball pointwise maps agree through the isomorphism.
struct Activation {
  enum class Kind { kRelu, kLeakyRelu };

  Kind kind = Kind::kRelu;
  double slope = 0.0;

  static Activation relu() { return {Kind::kRelu, 0.0}; }
  static Activation leaky_relu(double slope);
  /// "relu", "leaky_relu" (slope 0.2) or "leaky_relu:<slope>".
  static Activation parse(std::string_view tag);

  std::string tag() const;

  double operator()(double x) const { return x > 0.0 ? x : (kind == Kind::kRelu ? 0.0 : slope * x); }

  friend bool operator==(const Activation&, const Activation&) = default;
};

}  // namespace lgcn
