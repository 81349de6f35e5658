#include "mecrl/nn/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace mecrl::nn {

namespace {

void update_span(std::vector<double>& w, const std::vector<double>& g,
                 std::vector<double>& m, std::vector<double>& v,
                 const AdamState& s, double m_corr, double v_corr) {
  if (g.size() != w.size()) {
    throw std::invalid_argument("adam_step: gradient shape mismatch");
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    m[i] = s.beta_m * m[i] + (1.0 - s.beta_m) * g[i];
    v[i] = s.beta_v * v[i] + (1.0 - s.beta_v) * g[i] * g[i];
    const double m_hat = m[i] / m_corr;
    const double v_hat = v[i] / v_corr;
    w[i] -= s.lr * m_hat / (std::sqrt(v_hat) + s.eps);
  }
}

}  // namespace

AdamState make_adam(const MlpParams& shape, double lr) {
  AdamState s;
  s.first_moment = zeros_like(shape);
  s.second_moment = zeros_like(shape);
  s.lr = lr;
  return s;
}

void adam_step(MlpParams& params, const MlpParams& grads, AdamState& state) {
  if (grads.layer_sizes != params.layer_sizes) {
    throw std::invalid_argument("adam_step: layer shape mismatch");
  }
  state.timestep += 1;
  const double m_corr = 1.0 - std::pow(state.beta_m, static_cast<double>(state.timestep));
  const double v_corr = 1.0 - std::pow(state.beta_v, static_cast<double>(state.timestep));
  for (std::size_t l = 0; l < params.weights.size(); ++l) {
    update_span(params.weights[l], grads.weights[l], state.first_moment.weights[l],
                state.second_moment.weights[l], state, m_corr, v_corr);
    update_span(params.biases[l], grads.biases[l], state.first_moment.biases[l],
                state.second_moment.biases[l], state, m_corr, v_corr);
  }
}

}  // namespace mecrl::nn
