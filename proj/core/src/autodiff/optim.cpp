#include "lgcn/autodiff/optim.hpp"

#include <cmath>

#include "lgcn/errors.hpp"

namespace lgcn::ad {

void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state, const AdamConfig& config) {
  detail::require(params.size() == grads.size(), "adam_step: params/grads shape mismatch");
  if (state.m.empty() && state.v.empty()) {
    state.m.assign(params.size(), 0.0);
    state.v.assign(params.size(), 0.0);
  }
  detail::require(state.m.size() == params.size() && state.v.size() == params.size(),
                  "adam_step: state shape mismatch");
  ++state.step;
  const double c1 = 1.0 - std::pow(config.beta1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(config.beta2, static_cast<double>(state.step));
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = grads[i];
    state.m[i] = config.beta1 * state.m[i] + (1.0 - config.beta1) * g;
    state.v[i] = config.beta2 * state.v[i] + (1.0 - config.beta2) * g * g;
    const double m_hat = state.m[i] / c1;
    const double v_hat = state.v[i] / c2;
    params[i] -= config.lr * m_hat / (std::sqrt(v_hat) + config.eps);
  }
}

std::vector<double> dropconnect_mask(std::size_t size, double rate, Rng& rng) {
  detail::require(rate >= 0.0 && rate < 1.0, "dropconnect_mask: rate must lie in [0, 1)");
  std::vector<double> mask(size, 1.0);
  if (rate == 0.0) return mask;
  const double keep_scale = 1.0 / (1.0 - rate);
  for (auto& m : mask) m = uniform01(rng) < rate ? 0.0 : keep_scale;
  return mask;
}

}  // namespace lgcn::ad
