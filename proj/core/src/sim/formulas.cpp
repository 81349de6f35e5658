#include "mecrl/sim/formulas.hpp"

#include <cmath>
#include <stdexcept>

namespace mecrl::sim {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw std::overflow_error("action_space_size overflows 64-bit range");
  }
  return out;
}

}  // namespace

double transmission_rate(const ChannelParams& ch) {
  if (ch.bandwidth_hz <= 0.0) {
    throw std::invalid_argument("transmission_rate: bandwidth must be positive");
  }
  if (ch.noise_power_w <= 0.0) {
    throw std::invalid_argument("transmission_rate: noise power must be positive");
  }
  const double snr =
      ch.tx_power_w * ch.fading_gain * ch.path_loss / ch.noise_power_w;
  return ch.bandwidth_hz * std::log2(1.0 + snr);
}

double transmission_time(const TaskProfile& task, double rate_bps) {
  if (rate_bps <= 0.0) {
    throw std::invalid_argument("transmission_time: rate must be positive");
  }
  return task.data_size_bits / rate_bps;
}

double compute_time(const TaskProfile& task, double freq_hz) {
  if (freq_hz <= 0.0) {
    throw std::invalid_argument("compute_time: frequency must be positive");
  }
  return task.cpu_cycles / freq_hz;
}

double queue_wait_time(const ServerState& server) {
  double total = 0.0;
  for (const auto& entry : server.queue) {
    total += compute_time(entry.task, entry.assigned_freq_hz);
  }
  return total;
}

double residual_time(const ServerState& server) {
  return server.residual_time_s > 0.0 ? server.residual_time_s : 0.0;
}

double residual_time(double total_compute_s, double elapsed_run_s) {
  const double remaining = total_compute_s - elapsed_run_s;
  return remaining > 0.0 ? remaining : 0.0;
}

bool deadline_met(const TaskProfile& task, double residual_s, double wait_s,
                  double tx_s, double compute_s) {
  return residual_s + wait_s + tx_s + compute_s <= task.deadline_s;
}

EnergyBreakdown energy(const TaskProfile& task, double tx_time_s,
                       double tx_power_w, double freq_hz, double c_coeff) {
  EnergyBreakdown out;
  out.transmit_j = tx_time_s * tx_power_w;
  out.compute_j = c_coeff * freq_hz * freq_hz * task.cpu_cycles;
  out.total_j = out.transmit_j + out.compute_j;
  return out;
}

std::uint64_t action_space_size(std::uint64_t n_tasks, std::uint64_t n_servers,
                                std::uint64_t n_freq_levels) {
  if (n_tasks < 1 || n_servers < 1 || n_freq_levels < 1) {
    throw std::invalid_argument("action_space_size: all inputs must be >= 1");
  }
  // n_tasks! * C(n_tasks + n_servers - 1, n_servers - 1) equals the rising
  // factorial n_servers * (n_servers + 1) * ... * (n_servers + n_tasks - 1),
  // which avoids computing the factorial and binomial separately.
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < n_tasks; ++i) {
    result = checked_mul(result, n_servers + i);
  }
  return checked_mul(result, n_freq_levels);
}

}  // namespace mecrl::sim
