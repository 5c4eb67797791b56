#pragma once

// Reverse-mode automatic differentiation over scalar graphs.
//
// A `Var` is either a constant (index < 0, no tape) or a handle to a node on a
// `Tape`. Nodes are appended in evaluation order, so creation order is a
// topological order and `backward` is a single reverse sweep. Operations whose
// operands are all constants fold to constants and never touch a tape, which
// lets the same templated code run as a plain double evaluation.

#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace lgcn::ad {

enum class Op : std::uint8_t {
  kLeaf,
  kAdd,
  kSub,
  kMul,
  kDiv,
  kNeg,
  kExp,
  kLog,
  kSqrt,
  kTanh,
  kCosh,
  kSinh,
  kAsinh,
  kArcosh,
  kMax,
  kRelu,
  kLeakyRelu,
  kSigmoid,
  kSoftplus,
  kAbs,
  kClamp,
  kSum,
  kDot,
};

class Tape;

struct Var {
  double value = 0.0;
  std::int32_t index = -1;
  Tape* tape = nullptr;

  constexpr Var() = default;
  constexpr Var(double v) : value(v) {}  // NOLINT(google-explicit-constructor): constants mix freely
  constexpr Var(double v, std::int32_t i, Tape* t) : value(v), index(i), tape(t) {}

  constexpr bool is_constant() const noexcept { return index < 0; }
};

class Tape {
 public:
  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;
  Tape(Tape&&) = default;
  Tape& operator=(Tape&&) = default;

  /// New trainable leaf.
  Var variable(double value);

  /// Appends a node. Constant parents are dropped; if nothing remains the
  /// result is a constant.
  Var record(double value, Op op, std::span<const Var> parents, std::span<const double> partials);
  Var record(double value, Op op, std::initializer_list<std::pair<Var, double>> edges);

  /// Accumulates d(loss)/d(node) into every leaf's gradient. Calling it twice
  /// without `zero_grad` adds the gradients again.
  void backward(Var loss);

  double grad(Var v) const;
  void zero_grad();
  void clear();

  Op op(Var v) const;
  std::size_t size() const noexcept { return values_.size(); }
  std::size_t edge_count() const noexcept { return parents_.size(); }

 private:
  std::vector<double> values_;
  std::vector<double> grads_;
  std::vector<Op> ops_;
  std::vector<std::uint32_t> edge_begin_{0};
  std::vector<std::uint32_t> parents_;
  std::vector<double> partials_;
  std::vector<double> scratch_;
};

inline double value_of(double x) noexcept { return x; }
inline double value_of(const Var& x) noexcept { return x.value; }

Var operator+(const Var& a, const Var& b);
Var operator-(const Var& a, const Var& b);
Var operator*(const Var& a, const Var& b);
Var operator/(const Var& a, const Var& b);
Var operator-(const Var& a);
inline Var& operator+=(Var& a, const Var& b) { return a = a + b; }
inline Var& operator-=(Var& a, const Var& b) { return a = a - b; }
inline Var& operator*=(Var& a, const Var& b) { return a = a * b; }
inline Var& operator/=(Var& a, const Var& b) { return a = a / b; }

Var exp(const Var& x);
Var log(const Var& x);
/// d/dx at 0 is taken as 0.
Var sqrt(const Var& x);
Var tanh(const Var& x);
Var cosh(const Var& x);
Var sinh(const Var& x);
Var asinh(const Var& x);
/// Argument is clamped to >= 1; derivative uses max(x, 1 + 1e-12).
Var arcosh(const Var& x);
Var max(const Var& a, const Var& b);
/// Subgradient 0 at the kink.
Var relu(const Var& x);
Var leaky_relu(const Var& x, double slope);
Var sigmoid(const Var& x);
Var softplus(const Var& x);
Var abs(const Var& x);
/// Derivative 0 outside [lo, hi].
Var clamp(const Var& x, double lo, double hi);

Var sum(std::span<const Var> xs);
Var dot(std::span<const Var> a, std::span<const Var> b);

}  // namespace lgcn::ad
