#pragma once

#include <cstdint>
#include <deque>

namespace mecrl::sim {

// One offloading request: payload size, CPU demand and deadline.
struct TaskProfile {
  double data_size_bits = 0.0;
  double cpu_cycles = 0.0;
  double deadline_s = 0.0;
  std::int64_t user_id = 0;
  std::int64_t task_id = 0;
};

// Uplink channel between one user and one server.
struct ChannelParams {
  double bandwidth_hz = 0.0;
  double tx_power_w = 0.0;
  double fading_gain = 0.0;   // squared Rayleigh magnitude, unit mean
  double path_loss = 0.0;     // dimensionless link attenuation
  double noise_power_w = 0.0;
};

// Task waiting in a server queue together with the frequency it was
// assigned at offload time.
struct QueuedTask {
  TaskProfile task;
  double assigned_freq_hz = 0.0;
};

// One edge server. The task currently executing is tracked only through
// its remaining run time; waiting tasks sit in `queue` in FIFO order.
struct ServerState {
  double max_freq_hz = 0.0;
  std::size_t queue_capacity = 0;
  std::deque<QueuedTask> queue;
  double residual_time_s = 0.0;  // remaining run time of the executing task
  double sim_clock_s = 0.0;

  bool idle() const { return residual_time_s <= 0.0 && queue.empty(); }
  bool queue_full() const { return queue.size() >= queue_capacity; }
};

struct EnergyBreakdown {
  double transmit_j = 0.0;
  double compute_j = 0.0;
  double total_j = 0.0;
};

}  // namespace mecrl::sim
