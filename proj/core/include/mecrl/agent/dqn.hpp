#pragma once

#include <span>
#include <vector>

#include "mecrl/agent/config.hpp"
#include "mecrl/agent/replay.hpp"
#include "mecrl/nn/adam.hpp"
#include "mecrl/nn/mlp.hpp"
#include "mecrl/util/rng.hpp"

namespace mecrl::agent {

// Epsilon-greedy selection over a Q-vector. With probability epsilon a
// uniform action is drawn; otherwise the argmax (lowest index on ties).
std::size_t select_action(std::span<const double> q_values, double epsilon,
                          util::Rng& rng);

// Bootstrapped targets from the frozen network: r for terminal transitions,
// r + gamma * max_a' Q(s', a'; target) otherwise.
std::vector<double> td_targets(const std::vector<Transition>& batch,
                               const nn::MlpParams& target_params, double gamma);

// Multiplicative epsilon schedule with a floor.
double decay_epsilon(double eps, double eps_decay, double eps_end);

// Q-learner holding the learning network, its frozen target copy, the Adam
// state and the replay buffer.
class DqnAgent {
 public:
  DqnAgent(AgentConfig cfg, std::size_t obs_dim, std::size_t n_actions,
           std::uint64_t seed, double clip_min, double clip_max);

  std::size_t act(std::span<const double> observation, double epsilon);

  void remember(Transition t) { replay_.push(std::move(t)); }

  // Samples a batch and runs one gradient step; returns the loss, or
  // nullopt while the buffer is still warming up.
  std::optional<double> learn();

  // One gradient step on an explicit batch (targets from the frozen copy,
  // update applied to the learning network only).
  double train_step(const std::vector<Transition>& batch);

  void sync_target() { target_ = nn::copy_params(params_); }

  double epsilon() const { return epsilon_; }
  void decay() { epsilon_ = decay_epsilon(epsilon_, cfg_.eps_decay, cfg_.eps_end); }

  const nn::MlpParams& params() const { return params_; }
  const nn::MlpParams& target_params() const { return target_; }
  const AgentConfig& config() const { return cfg_; }
  ReplayBuffer& replay() { return replay_; }
  const ReplayBuffer& replay() const { return replay_; }
  util::Rng& rng() { return rng_; }

 private:
  AgentConfig cfg_;
  util::Rng rng_;
  nn::MlpParams params_;
  nn::MlpParams target_;
  nn::AdamState adam_;
  ReplayBuffer replay_;
  double epsilon_;
};

}  // namespace mecrl::agent
