#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "mecrl/agent/dqn.hpp"
#include "mecrl/env/environment.hpp"

namespace mecrl::agent {

struct EpisodeRow {
  std::size_t episode = 0;  // 1-based
  double reward_sum = 0.0;
  std::size_t tasks_completed = 0;  // on-time completions
  std::size_t tasks_failed = 0;
  double energy_j = 0.0;
  double mean_loss = 0.0;
  double epsilon = 0.0;
};

struct TrainingReport {
  std::vector<EpisodeRow> rows;

  static constexpr const char* kCsvHeader =
      "episode,reward_sum,tasks_completed,tasks_failed,energy_j,mean_loss,epsilon";
  void write_csv(std::ostream& out) const;
  std::string to_csv() const;
};

// Raised when a training step produces a NaN loss; carries the location.
struct NanLossError : std::runtime_error {
  NanLossError(std::size_t episode, std::size_t step);
  std::size_t episode;
  std::size_t step;
};

struct TrainingResult {
  TrainingReport report;
  nn::MlpParams params;  // learning network after the final episode
};

// Optional per-step observer (trace logging); called after every env step.
using StepObserver = std::function<void(std::size_t episode, std::size_t step,
                                        std::size_t action, const env::StepOutcome&)>;

// Full training protocol: per-episode resets, epsilon-greedy rollouts,
// replay writes, one gradient step per env step after warm-up, periodic
// target sync and per-episode epsilon decay.
TrainingResult run_training(const env::EnvConfig& env_cfg, const AgentConfig& agent_cfg,
                            std::uint64_t seed, const StepObserver& observer = {});

// A policy maps the environment snapshot to an encoded action.
using PolicyFn = std::function<std::size_t(const env::Environment&, util::Rng&)>;

// Frozen-policy rollouts sharing the training episode layout; rows carry
// epsilon = 0 and mean_loss = 0.
TrainingReport run_evaluation(const env::EnvConfig& env_cfg, const PolicyFn& policy,
                              std::size_t n_episodes, std::size_t t_max,
                              std::uint64_t seed, const StepObserver& observer = {});

}  // namespace mecrl::agent
