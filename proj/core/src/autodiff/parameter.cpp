#include "lgcn/autodiff/parameter.hpp"

#include <algorithm>
#include <cmath>

#include "lgcn/errors.hpp"

namespace lgcn::ad {

Parameter::Parameter(std::string n, std::size_t r, std::size_t c)
    : name(std::move(n)), rows(r), cols(c), values(r * c, 0.0), grads(r * c, 0.0) {}

std::vector<Var> Parameter::bind(Tape* tape) const {
  std::vector<Var> out;
  out.reserve(values.size());
  for (double v : values) out.push_back(tape && trainable ? tape->variable(v) : Var(v));
  return out;
}

void Parameter::accumulate_grads(const Tape& tape, std::span<const Var> bound) {
  detail::require(bound.size() == values.size(), "Parameter: bound size mismatch for " + name);
  for (std::size_t i = 0; i < bound.size(); ++i) grads[i] += tape.grad(bound[i]);
}

void Parameter::zero_grad() { std::fill(grads.begin(), grads.end(), 0.0); }

CurvatureParam CurvatureParam::from_beta(double beta) {
  detail::require(beta > kMinBeta && std::isfinite(beta), "CurvatureParam: beta must exceed the softplus floor");
  const double target = beta - kMinBeta;
  // inverse softplus
  const double theta = target > 30.0 ? target : std::log(std::expm1(target));
  return CurvatureParam(theta);
}

double CurvatureParam::beta() const { return softplus(Var(theta_)).value + kMinBeta; }

Var CurvatureParam::beta(const Var& theta) { return softplus(theta) + Var(kMinBeta); }

}  // namespace lgcn::ad
