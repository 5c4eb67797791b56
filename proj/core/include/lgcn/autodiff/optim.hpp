#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lgcn/util/rng.hpp"

namespace lgcn::ad {

struct AdamConfig {
  double lr = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  std::vector<double> m;
  std::vector<double> v;
  std::size_t step = 0;
};

/// One bias-corrected Adam update of `params` in place. State buffers are
/// sized on first use.
void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state, const AdamConfig& config);

/// Inverted DropConnect mask: each entry is 0 with probability `rate`,
/// otherwise 1/(1-rate), so the masked weights are unbiased.
std::vector<double> dropconnect_mask(std::size_t size, double rate, Rng& rng);

}  // namespace lgcn::ad
