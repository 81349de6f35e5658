#include "mecrl/agent/dqn.hpp"

#include <algorithm>
#include <stdexcept>

namespace mecrl::agent {

std::size_t select_action(std::span<const double> q_values, double epsilon,
                          util::Rng& rng) {
  if (q_values.empty()) {
    throw std::invalid_argument("select_action: empty Q-vector");
  }
  if (epsilon < 0.0 || epsilon > 1.0) {
    throw std::invalid_argument("select_action: epsilon must lie in [0, 1]");
  }
  if (rng.u01() < epsilon) {
    return rng.uniform_index(q_values.size());
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < q_values.size(); ++i) {
    if (q_values[i] > q_values[best]) {
      best = i;
    }
  }
  return best;
}

std::vector<double> td_targets(const std::vector<Transition>& batch,
                               const nn::MlpParams& target_params, double gamma) {
  if (batch.empty()) {
    throw std::invalid_argument("td_targets: empty batch");
  }
  std::vector<double> targets;
  targets.reserve(batch.size());
  for (const auto& t : batch) {
    if (t.terminal) {
      targets.push_back(t.reward);
      continue;
    }
    const auto q_next = nn::forward(target_params, t.next_observation);
    const double max_q = *std::max_element(q_next.begin(), q_next.end());
    targets.push_back(t.reward + gamma * max_q);
  }
  return targets;
}

double decay_epsilon(double eps, double eps_decay, double eps_end) {
  return std::max(eps_end, eps * eps_decay);
}

DqnAgent::DqnAgent(AgentConfig cfg, std::size_t obs_dim, std::size_t n_actions,
                   std::uint64_t seed, double clip_min, double clip_max)
    : cfg_(std::move(cfg)),
      rng_(util::derive_seed(seed, 0xA6E57)),
      params_([&] {
        std::vector<std::size_t> sizes;
        sizes.push_back(obs_dim);
        sizes.insert(sizes.end(), cfg_.hidden_layers.begin(), cfg_.hidden_layers.end());
        sizes.push_back(n_actions);
        util::Rng init_rng(util::derive_seed(seed, 0x11717));
        return nn::make_mlp(sizes, init_rng);
      }()),
      target_(nn::copy_params(params_)),
      adam_(nn::make_adam(params_, cfg_.lr)),
      replay_(cfg_.replay_capacity, clip_min, clip_max),
      epsilon_(cfg_.eps_start) {
  cfg_.validate();
}

std::size_t DqnAgent::act(std::span<const double> observation, double epsilon) {
  const auto q = nn::forward(params_, observation);
  return select_action(q, epsilon, rng_);
}

std::optional<double> DqnAgent::learn() {
  auto batch = replay_.sample(cfg_.batch_size, rng_);
  if (!batch) {
    return std::nullopt;
  }
  return train_step(*batch);
}

double DqnAgent::train_step(const std::vector<Transition>& batch) {
  auto targets = td_targets(batch, target_, cfg_.gamma);

  std::vector<std::vector<double>> obs;
  std::vector<std::size_t> actions;
  obs.reserve(batch.size());
  actions.reserve(batch.size());
  for (const auto& t : batch) {
    obs.push_back(t.observation);
    actions.push_back(t.action_encoded);
  }

  if (cfg_.td_error_clip) {
    // Clamp the per-sample error against the current prediction so a
    // single outlier target cannot dominate the gradient.
    for (std::size_t b = 0; b < batch.size(); ++b) {
      const auto q = nn::forward(params_, obs[b]);
      const double err = targets[b] - q[actions[b]];
      targets[b] = q[actions[b]] + std::clamp(err, -1.0, 1.0);
    }
  }

  auto lg = nn::mse_loss_and_grad(params_, obs, actions, targets);
  nn::adam_step(params_, lg.grads, adam_);
  return lg.loss;
}

}  // namespace mecrl::agent
