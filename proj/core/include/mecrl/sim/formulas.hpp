#pragma once

#include <cstdint>

#include "mecrl/sim/types.hpp"

namespace mecrl::sim {

inline constexpr double kDefaultEnergyCoeff = 1e-26;  // J / (Hz^2 * cycle)

// Shannon uplink rate in bits/s. Throws on nonpositive bandwidth or noise.
double transmission_rate(const ChannelParams& ch);

// Time to push the task payload through a link of the given rate.
double transmission_time(const TaskProfile& task, double rate_bps);

// Execution time of the task at the given CPU frequency.
double compute_time(const TaskProfile& task, double freq_hz);

// Total execution time of everything waiting in the server queue.
double queue_wait_time(const ServerState& server);

// Remaining run time of the task executing on the server; 0 when idle.
double residual_time(const ServerState& server);

// Remaining run time given the head task's total compute time and how long
// it has already been running. Clamped at completion.
double residual_time(double total_compute_s, double elapsed_run_s);

// On-time completion test: residual + queue wait + transmission + compute
// must not exceed the deadline (boundary inclusive).
bool deadline_met(const TaskProfile& task, double residual_s, double wait_s,
                  double tx_s, double compute_s);

// Transmission plus computation energy for serving one task.
EnergyBreakdown energy(const TaskProfile& task, double tx_time_s,
                       double tx_power_w, double freq_hz,
                       double c_coeff = kDefaultEnergyCoeff);

// Size of the joint assignment space when distributing n_tasks ordered
// tasks over n_servers queues with n_freq_levels frequency choices:
// n_tasks! * C(n_tasks + n_servers - 1, n_servers - 1) * n_freq_levels.
// Throws std::overflow_error when the result exceeds 64 bits.
std::uint64_t action_space_size(std::uint64_t n_tasks, std::uint64_t n_servers,
                                std::uint64_t n_freq_levels);

}  // namespace mecrl::sim
