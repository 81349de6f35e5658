#pragma once

#include <cstdint>

#include "mecrl/nn/mlp.hpp"

namespace mecrl::nn {

// Bias-corrected Adam:
//   m <- beta_m * m + (1 - beta_m) * g
//   v <- beta_v * v + (1 - beta_v) * g^2
//   w <- w - lr * (m / (1 - beta_m^t)) / (sqrt(v / (1 - beta_v^t)) + eps)
struct AdamState {
  MlpParams first_moment;
  MlpParams second_moment;
  std::uint64_t timestep = 0;
  double lr = 5e-4;
  double beta_m = 0.9;
  double beta_v = 0.999;
  double eps = 1e-8;
};

AdamState make_adam(const MlpParams& shape, double lr = 5e-4);

// One update step; params and state are modified in place.
void adam_step(MlpParams& params, const MlpParams& grads, AdamState& state);

}  // namespace mecrl::nn
