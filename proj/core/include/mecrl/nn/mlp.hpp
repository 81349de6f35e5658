#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "mecrl/util/rng.hpp"

namespace mecrl::nn {

// Dense feed-forward network parameters. Weight matrices are row-major
// with shape (layer_sizes[i+1], layer_sizes[i]). Hidden layers use ReLU,
// the output layer is affine.
struct MlpParams {
  std::vector<std::size_t> layer_sizes;
  std::vector<std::vector<double>> weights;
  std::vector<std::vector<double>> biases;

  std::size_t input_size() const { return layer_sizes.front(); }
  std::size_t output_size() const { return layer_sizes.back(); }
  std::size_t parameter_count() const;
};

// He-style uniform fan-in initialization from the given rng stream.
MlpParams make_mlp(const std::vector<std::size_t>& layer_sizes, util::Rng& rng);

// Zero-filled parameters of the given shape (used for gradients/moments).
MlpParams zeros_like(const MlpParams& shape);

// Deep value copy; mutating one side never affects the other.
MlpParams copy_params(const MlpParams& src);

std::vector<double> forward(const MlpParams& params, std::span<const double> input);

struct LossAndGrad {
  double loss = 0.0;
  MlpParams grads;
};

// Mean squared error over the batch where only the taken action's output
// unit receives error signal: loss = mean_b (target_b - Q(s_b)[a_b])^2.
// Gradients are exact analytic derivatives of that loss. Rejects NaN input.
LossAndGrad mse_loss_and_grad(const MlpParams& params,
                              const std::vector<std::vector<double>>& batch_obs,
                              const std::vector<std::size_t>& batch_action_idx,
                              const std::vector<double>& batch_targets);

// Binary checkpoint: magic + version header, layer sizes, then row-major
// weights and biases as little-endian 64-bit floats.
void save_checkpoint(const MlpParams& params, const std::filesystem::path& file);
MlpParams load_checkpoint(const std::filesystem::path& file);

}  // namespace mecrl::nn
