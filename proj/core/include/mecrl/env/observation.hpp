#pragma once

#include <span>
#include <vector>

#include "mecrl/sim/types.hpp"

namespace mecrl::env {

// Normalized feature vector fed to the agent. Each leaf block (task
// features, one block per server, channel rates) is scaled to unit
// Euclidean norm independently; an all-zero block stays all-zero.
struct Observation {
  std::vector<double> task_block;                  // [data, cycles, deadline]
  std::vector<std::vector<double>> server_blocks;  // per server:
                                                   // [queue_len, queued_cycles,
                                                   //  max_freq, residual, wait]
  std::vector<double> rate_block;                  // per-server uplink rate
  std::vector<double> flattened;                   // task | servers... | rates

  std::size_t size() const { return flattened.size(); }
};

// Divides the block by its Euclidean norm; a zero block is returned as-is.
std::vector<double> normalize_block(std::span<const double> block);

// Assembles the observation for one pending task from the raw snapshot.
// `rates_bps` holds the uplink rate from the task's user to each server.
Observation build_observation(const sim::TaskProfile& pending_task,
                              const std::vector<sim::ServerState>& servers,
                              const std::vector<double>& rates_bps);

}  // namespace mecrl::env
