#include "mecrl/nn/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mecrl::nn {

namespace {

void check_shapes(const MlpParams& p) {
  if (p.layer_sizes.size() < 2) {
    throw std::invalid_argument("network needs at least input and output layers");
  }
  const std::size_t n_layers = p.layer_sizes.size() - 1;
  if (p.weights.size() != n_layers || p.biases.size() != n_layers) {
    throw std::invalid_argument("layer count mismatch between sizes and parameters");
  }
  for (std::size_t i = 0; i < n_layers; ++i) {
    if (p.weights[i].size() != p.layer_sizes[i + 1] * p.layer_sizes[i] ||
        p.biases[i].size() != p.layer_sizes[i + 1]) {
      throw std::invalid_argument("parameter shape mismatch at layer " + std::to_string(i));
    }
  }
}

}  // namespace

std::size_t MlpParams::parameter_count() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i + 1 < layer_sizes.size(); ++i) {
    n += layer_sizes[i + 1] * (layer_sizes[i] + 1);
  }
  return n;
}

MlpParams make_mlp(const std::vector<std::size_t>& layer_sizes, util::Rng& rng) {
  MlpParams p;
  p.layer_sizes = layer_sizes;
  if (layer_sizes.size() < 2) {
    throw std::invalid_argument("network needs at least input and output layers");
  }
  for (std::size_t i = 0; i + 1 < layer_sizes.size(); ++i) {
    const std::size_t fan_in = layer_sizes[i];
    const std::size_t fan_out = layer_sizes[i + 1];
    const double bound = std::sqrt(6.0 / static_cast<double>(fan_in));
    std::vector<double> w(fan_out * fan_in);
    for (double& v : w) {
      v = rng.uniform(-bound, bound);
    }
    p.weights.push_back(std::move(w));
    p.biases.emplace_back(fan_out, 0.0);
  }
  return p;
}

MlpParams zeros_like(const MlpParams& shape) {
  MlpParams p;
  p.layer_sizes = shape.layer_sizes;
  for (std::size_t i = 0; i < shape.weights.size(); ++i) {
    p.weights.emplace_back(shape.weights[i].size(), 0.0);
    p.biases.emplace_back(shape.biases[i].size(), 0.0);
  }
  return p;
}

MlpParams copy_params(const MlpParams& src) { return src; }

std::vector<double> forward(const MlpParams& params, std::span<const double> input) {
  check_shapes(params);
  if (input.size() != params.input_size()) {
    throw std::invalid_argument("forward: input length does not match the input layer");
  }

  std::vector<double> act(input.begin(), input.end());
  const std::size_t n_layers = params.layer_sizes.size() - 1;
  for (std::size_t l = 0; l < n_layers; ++l) {
    const std::size_t in = params.layer_sizes[l];
    const std::size_t out = params.layer_sizes[l + 1];
    const double* w = params.weights[l].data();
    std::vector<double> next(out);
    for (std::size_t j = 0; j < out; ++j) {
      double sum = params.biases[l][j];
      const double* row = w + j * in;
      for (std::size_t i = 0; i < in; ++i) {
        sum += row[i] * act[i];
      }
      next[j] = (l + 1 < n_layers) ? std::max(0.0, sum) : sum;
    }
    act = std::move(next);
  }
  return act;
}

LossAndGrad mse_loss_and_grad(const MlpParams& params,
                              const std::vector<std::vector<double>>& batch_obs,
                              const std::vector<std::size_t>& batch_action_idx,
                              const std::vector<double>& batch_targets) {
  check_shapes(params);
  const std::size_t batch = batch_obs.size();
  if (batch == 0) {
    throw std::invalid_argument("mse_loss_and_grad: empty batch");
  }
  if (batch_action_idx.size() != batch || batch_targets.size() != batch) {
    throw std::invalid_argument("mse_loss_and_grad: batch length mismatch");
  }
  for (double t : batch_targets) {
    if (std::isnan(t)) {
      throw std::invalid_argument("mse_loss_and_grad: NaN target");
    }
  }

  const std::size_t n_layers = params.layer_sizes.size() - 1;
  LossAndGrad out;
  out.grads = zeros_like(params);
  const double inv_batch = 1.0 / static_cast<double>(batch);

  // Per-sample activations for the backward pass.
  std::vector<std::vector<double>> acts(n_layers + 1);
  for (std::size_t b = 0; b < batch; ++b) {
    const auto& x = batch_obs[b];
    if (x.size() != params.input_size()) {
      throw std::invalid_argument("mse_loss_and_grad: observation length mismatch");
    }
    for (double v : x) {
      if (std::isnan(v)) {
        throw std::invalid_argument("mse_loss_and_grad: NaN observation");
      }
    }
    if (batch_action_idx[b] >= params.output_size()) {
      throw std::invalid_argument("mse_loss_and_grad: action index out of range");
    }

    acts[0].assign(x.begin(), x.end());
    for (std::size_t l = 0; l < n_layers; ++l) {
      const std::size_t in = params.layer_sizes[l];
      const std::size_t out_n = params.layer_sizes[l + 1];
      const double* w = params.weights[l].data();
      acts[l + 1].assign(out_n, 0.0);
      for (std::size_t j = 0; j < out_n; ++j) {
        double sum = params.biases[l][j];
        const double* row = w + j * in;
        for (std::size_t i = 0; i < in; ++i) {
          sum += row[i] * acts[l][i];
        }
        acts[l + 1][j] = (l + 1 < n_layers) ? std::max(0.0, sum) : sum;
      }
    }

    const std::size_t a = batch_action_idx[b];
    const double err = acts[n_layers][a] - batch_targets[b];
    out.loss += err * err * inv_batch;

    // Backward pass: only the taken action's unit carries error.
    std::vector<double> delta(params.output_size(), 0.0);
    delta[a] = 2.0 * err * inv_batch;
    for (std::size_t l = n_layers; l-- > 0;) {
      const std::size_t in = params.layer_sizes[l];
      const std::size_t out_n = params.layer_sizes[l + 1];
      const double* w = params.weights[l].data();
      double* gw = out.grads.weights[l].data();
      for (std::size_t j = 0; j < out_n; ++j) {
        const double d = delta[j];
        if (d == 0.0) {
          continue;
        }
        out.grads.biases[l][j] += d;
        double* grow = gw + j * in;
        for (std::size_t i = 0; i < in; ++i) {
          grow[i] += d * acts[l][i];
        }
      }
      if (l == 0) {
        break;
      }
      std::vector<double> prev(in, 0.0);
      for (std::size_t j = 0; j < out_n; ++j) {
        const double d = delta[j];
        if (d == 0.0) {
          continue;
        }
        const double* row = w + j * in;
        for (std::size_t i = 0; i < in; ++i) {
          prev[i] += d * row[i];
        }
      }
      // ReLU derivative: pass gradient only where the unit fired.
      for (std::size_t i = 0; i < in; ++i) {
        if (acts[l][i] <= 0.0) {
          prev[i] = 0.0;
        }
      }
      delta = std::move(prev);
    }
  }
  return out;
}

}  // namespace mecrl::nn
