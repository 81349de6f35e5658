#include "mecrl/env/environment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mecrl/sim/formulas.hpp"

namespace mecrl::env {

namespace {
// Energy floor applied before the logarithm in the reward so that a
// near-zero energy cannot blow the reward up.
constexpr double kEnergyFloorJ = 1e-12;
}  // namespace

sim::TaskProfile generate_task(util::Rng& rng, const EnvConfig& cfg,
                               std::int64_t task_id) {
  sim::TaskProfile task;
  task.data_size_bits = rng.uniform(cfg.task_data_bits_range[0], cfg.task_data_bits_range[1]);
  task.cpu_cycles = rng.uniform(cfg.task_cycles_range[0], cfg.task_cycles_range[1]);
  task.deadline_s = rng.uniform(cfg.deadline_range_s[0], cfg.deadline_range_s[1]);
  task.user_id = static_cast<std::int64_t>(rng.uniform_index(cfg.n_users));
  task.task_id = task_id;
  return task;
}

Environment::Environment(EnvConfig cfg) : cfg_(std::move(cfg)), rng_(cfg_.seed) {
  cfg_.validate();
}

Observation Environment::reset(std::uint64_t seed) {
  rng_ = util::Rng(seed);
  terminal_ = false;
  clock_s_ = 0.0;
  slot_index_ = 0;
  tasks_in_slot_ = 0;
  next_task_id_ = 0;
  steps_ = 0;

  servers_.assign(cfg_.n_servers, sim::ServerState{});
  for (auto& srv : servers_) {
    srv.max_freq_hz = rng_.uniform(cfg_.server_freq_range_hz[0], cfg_.server_freq_range_hz[1]);
    srv.queue_capacity = cfg_.queue_capacity;
    srv.residual_time_s = 0.0;
    srv.sim_clock_s = 0.0;
  }

  const std::size_t n_links = cfg_.n_users * cfg_.n_servers;
  path_loss_.resize(n_links);
  for (auto& l : path_loss_) {
    l = rng_.uniform(cfg_.channel.path_loss_range[0], cfg_.channel.path_loss_range[1]);
  }
  // Scale so that the mean received SNR over fading (unit mean) and path
  // loss (uniform over its range) equals the configured value.
  const double mean_loss =
      0.5 * (cfg_.channel.path_loss_range[0] + cfg_.channel.path_loss_range[1]);
  snr_scale_ = cfg_.channel.mean_snr * cfg_.channel.noise_power_w /
               (cfg_.channel.tx_power_w * mean_loss);

  fading_.resize(n_links);
  for (auto& h : fading_) {
    h = rng_.exponential(1.0);
  }

  pending_ = generate_task(rng_, cfg_, next_task_id_++);
  has_pending_ = true;
  tasks_in_slot_ = 1;
  refresh_pending_view();
  return obs_;
}

const sim::TaskProfile& Environment::pending_task() const {
  if (!has_pending_) {
    throw std::logic_error("pending_task(): environment has not been reset");
  }
  return pending_;
}

double Environment::link_rate(std::int64_t user, std::size_t server) const {
  const std::size_t idx = static_cast<std::size_t>(user) * cfg_.n_servers + server;
  sim::ChannelParams ch;
  ch.bandwidth_hz = cfg_.channel.bandwidth_hz;
  ch.tx_power_w = cfg_.channel.tx_power_w;
  ch.fading_gain = fading_[idx];
  ch.path_loss = snr_scale_ * path_loss_[idx];
  ch.noise_power_w = cfg_.channel.noise_power_w;
  return sim::transmission_rate(ch);
}

void Environment::refresh_pending_view() {
  pending_rates_.resize(cfg_.n_servers);
  for (std::size_t k = 0; k < cfg_.n_servers; ++k) {
    pending_rates_[k] = link_rate(pending_.user_id, k);
  }
  obs_ = build_observation(pending_, servers_, pending_rates_);
}

double reward_raw(const RewardConfig& rw, bool task_completed, double energy_j) {
  const double task_term = (1.0 - rw.eta) * rw.beta1 * (task_completed ? 1.0 : 0.0);
  const double energy_term =
      rw.eta * rw.beta2 * std::log2(std::max(energy_j, kEnergyFloorJ));
  return task_term - energy_term + rw.const_c;
}

double clip_reward(const RewardConfig& rw, double raw) {
  return std::clamp(raw, rw.clip_min, rw.clip_max);
}

void Environment::advance_servers(double dt) {
  for (auto& srv : servers_) {
    double remaining = dt;
    while (remaining > 0.0) {
      if (srv.residual_time_s > 0.0) {
        const double used = std::min(srv.residual_time_s, remaining);
        srv.residual_time_s -= used;
        remaining -= used;
      } else if (!srv.queue.empty()) {
        const auto& head = srv.queue.front();
        srv.residual_time_s = sim::compute_time(head.task, head.assigned_freq_hz);
        srv.queue.pop_front();
      } else {
        break;
      }
    }
    // A drained running slot pulls the next waiting task in immediately,
    // so the queue never holds a task while the server sits idle.
    if (srv.residual_time_s <= 0.0 && !srv.queue.empty()) {
      const auto& head = srv.queue.front();
      srv.residual_time_s = sim::compute_time(head.task, head.assigned_freq_hz);
      srv.queue.pop_front();
    }
    srv.sim_clock_s = clock_s_ + dt;
  }
}

void Environment::arrive_next_task() {
  const double slot_len = cfg_.slot_duration_s();
  double t_next = clock_s_ + rng_.exponential(cfg_.mean_interarrival_s);
  std::uint64_t target_slot = static_cast<std::uint64_t>(t_next / slot_len);
  if (target_slot <= slot_index_ && tasks_in_slot_ >= cfg_.lambda_max_tasks_per_slot) {
    // Arrivals beyond the per-slot threshold are deferred to the next slot.
    // The slot index is advanced explicitly so boundary rounding can never
    // re-derive the old slot and stall the clock.
    target_slot = slot_index_ + 1;
    t_next = std::max(t_next, static_cast<double>(target_slot) * slot_len);
  }

  advance_servers(t_next - clock_s_);
  clock_s_ = t_next;

  if (target_slot != slot_index_) {
    slot_index_ = target_slot;
    tasks_in_slot_ = 0;
    for (auto& h : fading_) {
      h = rng_.exponential(1.0);  // channel redraw at the slot boundary
    }
  }

  pending_ = generate_task(rng_, cfg_, next_task_id_++);
  ++tasks_in_slot_;
  refresh_pending_view();
}

StepOutcome Environment::step(const Action& action) {
  if (terminal_) {
    throw std::logic_error("step() on a terminal environment; call reset() first");
  }
  if (action.server_index >= cfg_.n_servers) {
    throw std::invalid_argument("action.server_index out of range");
  }
  if (action.freq_level < 1 || action.freq_level > cfg_.n_freq_levels) {
    throw std::invalid_argument("action.freq_level out of range");
  }

  sim::ServerState& srv = servers_[action.server_index];
  const double freq_hz = (static_cast<double>(action.freq_level) /
                          static_cast<double>(cfg_.n_freq_levels)) *
                         srv.max_freq_hz;
  const double rate = pending_rates_[action.server_index];

  const double residual = sim::residual_time(srv);
  const double wait = sim::queue_wait_time(srv);
  const double tx = sim::transmission_time(pending_, rate);
  const double comp = sim::compute_time(pending_, freq_hz);

  const bool overload = srv.queue_full();
  const bool completed =
      !overload && sim::deadline_met(pending_, residual, wait, tx, comp);
  const auto energy =
      sim::energy(pending_, tx, cfg_.channel.tx_power_w, freq_hz, cfg_.energy_coeff_c);

  StepOutcome out;
  out.info.task_completed = completed;
  out.info.energy_j = energy.total_j;
  out.info.service_time_s = residual + wait + tx + comp;
  out.info.reward_raw = reward_raw(cfg_.reward, completed, energy.total_j);
  out.reward = clip_reward(cfg_.reward, out.info.reward_raw);

  ++steps_;
  if (overload) {
    terminal_ = true;
  } else {
    if (srv.idle()) {
      srv.residual_time_s = comp;  // starts executing immediately
    } else {
      srv.queue.push_back({pending_, freq_hz});
    }
    arrive_next_task();
  }
  out.terminal = terminal_;
  out.next_observation = obs_;
  return out;
}

}  // namespace mecrl::env
