#pragma once

#include <cstdint>
#include <vector>

#include "mecrl/env/config.hpp"
#include "mecrl/env/observation.hpp"
#include "mecrl/sim/types.hpp"
#include "mecrl/util/rng.hpp"

namespace mecrl::env {

// Joint decision for one task: target server plus discrete frequency level.
// Level l in [1, n_freq_levels] maps to (l / n_freq_levels) * max_freq of the
// chosen server, so the assigned frequency is always strictly positive.
struct Action {
  std::size_t server_index = 0;
  std::size_t freq_level = 1;

  std::size_t encode(std::size_t n_freq_levels) const {
    return server_index * n_freq_levels + (freq_level - 1);
  }
  static Action decode(std::size_t encoded, std::size_t n_freq_levels) {
    return Action{encoded / n_freq_levels, encoded % n_freq_levels + 1};
  }
};

struct StepInfo {
  bool task_completed = false;  // on-time completion indicator of this task
  double energy_j = 0.0;
  double service_time_s = 0.0;
  double reward_raw = 0.0;  // reward before clipping
};

struct StepOutcome {
  Observation next_observation;
  double reward = 0.0;
  bool terminal = false;
  StepInfo info;
};

// Draws one task with uniform data size, CPU demand, deadline and user id.
sim::TaskProfile generate_task(util::Rng& rng, const EnvConfig& cfg,
                               std::int64_t task_id);

// Pre-clip step reward:
//   (1 - eta) * beta1 * F_task - eta * beta2 * log2(max(E, floor)) + const_c
// where the energy floor (1e-12 J) keeps the logarithm finite.
double reward_raw(const RewardConfig& rw, bool task_completed, double energy_j);

double clip_reward(const RewardConfig& rw, double raw);

// The offloading MDP. One step processes exactly one pending task: the
// action enqueues it on a server at a frequency, the reward scores on-time
// completion against energy, and the episode terminates when an enqueue
// hits a full queue.
class Environment {
 public:
  explicit Environment(EnvConfig cfg);

  // Rebuilds servers, channels and the task stream from the seed and
  // returns the observation for the first pending task.
  Observation reset(std::uint64_t seed);
  Observation reset() { return reset(cfg_.seed); }

  StepOutcome step(const Action& action);
  StepOutcome step(std::size_t encoded_action) {
    return step(Action::decode(encoded_action, cfg_.n_freq_levels));
  }

  bool terminal() const { return terminal_; }
  const EnvConfig& config() const { return cfg_; }
  std::size_t n_actions() const { return cfg_.n_actions(); }

  // Raw snapshot accessors for baseline policies and verification.
  const sim::TaskProfile& pending_task() const;
  const std::vector<sim::ServerState>& servers() const { return servers_; }
  const std::vector<double>& pending_rates() const { return pending_rates_; }
  const Observation& observation() const { return obs_; }

  double sim_clock_s() const { return clock_s_; }
  std::uint64_t steps_taken() const { return steps_; }

 private:
  void advance_servers(double dt);
  void arrive_next_task();
  void refresh_pending_view();
  double link_rate(std::int64_t user, std::size_t server) const;

  EnvConfig cfg_;
  util::Rng rng_;
  std::vector<sim::ServerState> servers_;
  std::vector<double> path_loss_;    // n_users * n_servers, fixed per episode
  std::vector<double> fading_;       // n_users * n_servers, redrawn per slot
  double snr_scale_ = 1.0;           // calibrates mean received SNR
  double clock_s_ = 0.0;
  std::uint64_t slot_index_ = 0;
  std::size_t tasks_in_slot_ = 0;
  std::int64_t next_task_id_ = 0;
  sim::TaskProfile pending_;
  bool has_pending_ = false;
  std::vector<double> pending_rates_;
  Observation obs_;
  bool terminal_ = true;  // step() before the first reset() is an error
  std::uint64_t steps_ = 0;
};

}  // namespace mecrl::env
