#include "lgcn/autodiff/tape.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lgcn/errors.hpp"

namespace lgcn::ad {
namespace {

Tape* pick_tape(const Var& a, const Var& b) {
  if (a.tape && b.tape && a.tape != b.tape) throw ContractViolation("ad: operands live on different tapes");
  return a.tape ? a.tape : b.tape;
}

Var unary(const Var& x, double value, Op op, double partial) {
  if (x.is_constant()) return Var(value);
  return x.tape->record(value, op, {{x, partial}});
}

Var binary(const Var& a, const Var& b, double value, Op op, double da, double db) {
  if (a.is_constant() && b.is_constant()) return Var(value);
  return pick_tape(a, b)->record(value, op, {{a, da}, {b, db}});
}

}  // namespace

Var Tape::variable(double value) {
  const auto idx = static_cast<std::int32_t>(values_.size());
  values_.push_back(value);
  grads_.push_back(0.0);
  ops_.push_back(Op::kLeaf);
  edge_begin_.push_back(static_cast<std::uint32_t>(parents_.size()));
  return Var(value, idx, this);
}

Var Tape::record(double value, Op op, std::span<const Var> parents, std::span<const double> partials) {
  detail::require(parents.size() == partials.size(), "ad: parents/partials size mismatch");
  const std::size_t before = parents_.size();
  for (std::size_t i = 0; i < parents.size(); ++i) {
    if (parents[i].is_constant()) continue;
    if (parents[i].tape != this) throw ContractViolation("ad: parent recorded on a different tape");
    parents_.push_back(static_cast<std::uint32_t>(parents[i].index));
    partials_.push_back(partials[i]);
  }
  if (parents_.size() == before) return Var(value);
  const auto idx = static_cast<std::int32_t>(values_.size());
  values_.push_back(value);
  grads_.push_back(0.0);
  ops_.push_back(op);
  edge_begin_.push_back(static_cast<std::uint32_t>(parents_.size()));
  return Var(value, idx, this);
}

Var Tape::record(double value, Op op, std::initializer_list<std::pair<Var, double>> edges) {
  const std::size_t before = parents_.size();
  for (const auto& [p, d] : edges) {
    if (p.is_constant()) continue;
    if (p.tape != this) throw ContractViolation("ad: parent recorded on a different tape");
    parents_.push_back(static_cast<std::uint32_t>(p.index));
    partials_.push_back(d);
  }
  if (parents_.size() == before) return Var(value);
  const auto idx = static_cast<std::int32_t>(values_.size());
  values_.push_back(value);
  grads_.push_back(0.0);
  ops_.push_back(op);
  edge_begin_.push_back(static_cast<std::uint32_t>(parents_.size()));
  return Var(value, idx, this);
}

void Tape::backward(Var loss) {
  if (loss.is_constant()) return;
  if (loss.tape != this) throw ContractViolation("ad: loss does not belong to this tape");
  const auto top = static_cast<std::size_t>(loss.index);
  scratch_.assign(top + 1, 0.0);
  scratch_[top] = 1.0;
  for (std::size_t i = top + 1; i-- > 0;) {
    const double adj = scratch_[i];
    if (adj == 0.0) continue;
    if (ops_[i] == Op::kLeaf) {
      grads_[i] += adj;
      continue;
    }
    for (std::uint32_t e = edge_begin_[i]; e < edge_begin_[i + 1]; ++e) scratch_[parents_[e]] += adj * partials_[e];
  }
}

double Tape::grad(Var v) const {
  if (v.is_constant()) return 0.0;
  detail::require(v.tape == this, "ad: variable does not belong to this tape");
  return grads_[static_cast<std::size_t>(v.index)];
}

void Tape::zero_grad() { std::fill(grads_.begin(), grads_.end(), 0.0); }

void Tape::clear() {
  values_.clear();
  grads_.clear();
  ops_.clear();
  edge_begin_.assign(1, 0);
  parents_.clear();
  partials_.clear();
  scratch_.clear();
}

Op Tape::op(Var v) const {
  detail::require(!v.is_constant() && v.tape == this, "ad: op() of a foreign or constant variable");
  return ops_[static_cast<std::size_t>(v.index)];
}

Var operator+(const Var& a, const Var& b) {
  if (a.is_constant() && a.value == 0.0) return b;
  if (b.is_constant() && b.value == 0.0) return a;
  return binary(a, b, a.value + b.value, Op::kAdd, 1.0, 1.0);
}

Var operator-(const Var& a, const Var& b) {
  if (b.is_constant() && b.value == 0.0) return a;
  return binary(a, b, a.value - b.value, Op::kSub, 1.0, -1.0);
}

Var operator*(const Var& a, const Var& b) {
  if ((a.is_constant() && a.value == 0.0) || (b.is_constant() && b.value == 0.0)) return Var(0.0);
  if (a.is_constant() && a.value == 1.0) return b;
  if (b.is_constant() && b.value == 1.0) return a;
  return binary(a, b, a.value * b.value, Op::kMul, b.value, a.value);
}

Var operator/(const Var& a, const Var& b) {
  if (b.value == 0.0) throw ContractViolation("ad: division by zero");
  if (a.is_constant() && a.value == 0.0) return Var(0.0);
  const double q = a.value / b.value;
  return binary(a, b, q, Op::kDiv, 1.0 / b.value, -q / b.value);
}

Var operator-(const Var& a) { return unary(a, -a.value, Op::kNeg, -1.0); }

Var exp(const Var& x) {
  const double e = std::exp(x.value);
  return unary(x, e, Op::kExp, e);
}

Var log(const Var& x) {
  if (!(x.value > 0.0)) throw ContractViolation("ad: log of non-positive value " + std::to_string(x.value));
  return unary(x, std::log(x.value), Op::kLog, 1.0 / x.value);
}

Var sqrt(const Var& x) {
  if (x.value < 0.0) throw ContractViolation("ad: sqrt of negative value " + std::to_string(x.value));
  const double s = std::sqrt(x.value);
  return unary(x, s, Op::kSqrt, s > 0.0 ? 0.5 / s : 0.0);
}

Var tanh(const Var& x) {
  const double t = std::tanh(x.value);
  return unary(x, t, Op::kTanh, 1.0 - t * t);
}

Var cosh(const Var& x) { return unary(x, std::cosh(x.value), Op::kCosh, std::sinh(x.value)); }

Var sinh(const Var& x) { return unary(x, std::sinh(x.value), Op::kSinh, std::cosh(x.value)); }

Var asinh(const Var& x) {
  return unary(x, std::asinh(x.value), Op::kAsinh, 1.0 / std::sqrt(x.value * x.value + 1.0));
}

Var arcosh(const Var& x) {
  const double arg = std::max(x.value, 1.0);
  const double safe = std::max(x.value, 1.0 + 1e-12);
  return unary(x, std::acosh(arg), Op::kArcosh, 1.0 / std::sqrt(safe * safe - 1.0));
}

Var max(const Var& a, const Var& b) {
  const bool first = a.value >= b.value;
  return binary(a, b, first ? a.value : b.value, Op::kMax, first ? 1.0 : 0.0, first ? 0.0 : 1.0);
}

Var relu(const Var& x) { return unary(x, x.value > 0.0 ? x.value : 0.0, Op::kRelu, x.value > 0.0 ? 1.0 : 0.0); }

Var leaky_relu(const Var& x, double slope) {
  return unary(x, x.value > 0.0 ? x.value : slope * x.value, Op::kLeakyRelu, x.value > 0.0 ? 1.0 : slope);
}

Var sigmoid(const Var& x) {
  const double s = x.value >= 0.0 ? 1.0 / (1.0 + std::exp(-x.value)) : std::exp(x.value) / (1.0 + std::exp(x.value));
  return unary(x, s, Op::kSigmoid, s * (1.0 - s));
}

Var softplus(const Var& x) {
  const double v = x.value > 0.0 ? x.value + std::log1p(std::exp(-x.value)) : std::log1p(std::exp(x.value));
  const double s = x.value >= 0.0 ? 1.0 / (1.0 + std::exp(-x.value)) : std::exp(x.value) / (1.0 + std::exp(x.value));
  return unary(x, v, Op::kSoftplus, s);
}

Var abs(const Var& x) { return unary(x, std::abs(x.value), Op::kAbs, x.value >= 0.0 ? 1.0 : -1.0); }

Var clamp(const Var& x, double lo, double hi) {
  if (x.value < lo) return unary(x, lo, Op::kClamp, 0.0);
  if (x.value > hi) return unary(x, hi, Op::kClamp, 0.0);
  return unary(x, x.value, Op::kClamp, 1.0);
}

Var sum(std::span<const Var> xs) {
  double total = 0.0;
  Tape* tape = nullptr;
  for (const auto& x : xs) {
    total += x.value;
    if (x.is_constant()) continue;
    if (tape && x.tape != tape) throw ContractViolation("ad: sum operands on different tapes");
    tape = x.tape;
  }
  if (!tape) return Var(total);
  thread_local std::vector<double> ones;
  ones.assign(xs.size(), 1.0);
  return tape->record(total, Op::kSum, xs, ones);
}

Var dot(std::span<const Var> a, std::span<const Var> b) {
  detail::require(a.size() == b.size(), "ad: dot of unequal lengths");
  double total = 0.0;
  Tape* tape = nullptr;
  thread_local std::vector<Var> parents;
  thread_local std::vector<double> partials;
  parents.clear();
  partials.clear();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Var& x = a[i];
    const Var& y = b[i];
    total += x.value * y.value;
    const bool xc = x.is_constant();
    const bool yc = y.is_constant();
    if ((xc && x.value == 0.0) || (yc && y.value == 0.0) || (xc && yc)) continue;
    for (const Var* v : {&x, &y}) {
      if (v->is_constant()) continue;
      if (tape && v->tape != tape) throw ContractViolation("ad: dot operands on different tapes");
      tape = v->tape;
    }
    if (!xc) {
      parents.push_back(x);
      partials.push_back(y.value);
    }
    if (!yc) {
      parents.push_back(y);
      partials.push_back(x.value);
    }
  }
  if (!tape) return Var(total);
  return tape->record(total, Op::kDot, parents, partials);
}

}  // namespace lgcn::ad
