#include "mecrl/env/observation.hpp"

#include <cmath>
#include <stdexcept>

#include "mecrl/sim/formulas.hpp"

namespace mecrl::env {

std::vector<double> normalize_block(std::span<const double> block) {
  double sum_sq = 0.0;
  for (double v : block) {
    sum_sq += v * v;
  }
  std::vector<double> out(block.begin(), block.end());
  if (sum_sq == 0.0) {
    return out;  // zero block passes through unchanged
  }
  const double norm = std::sqrt(sum_sq);
  for (double& v : out) {
    v /= norm;
  }
  return out;
}

namespace {

// Feature units. Raw quantities span ~10 orders of magnitude (Hz vs task
// counts vs milliseconds); a block mixing them would be dominated by its
// largest member after unit-norm scaling, hiding queue state entirely.
// Expressing each feature in a unit that lands near O(1) keeps every
// component of a normalized block informative.
constexpr double kBitsUnit = 1e6;    // megabits
constexpr double kCyclesUnit = 1e7;  // tens of megacycles (one task's worth)
constexpr double kFreqUnit = 1e9;    // GHz
constexpr double kTimeUnit = 1e-3;   // milliseconds

}  // namespace

Observation build_observation(const sim::TaskProfile& pending_task,
                              const std::vector<sim::ServerState>& servers,
                              const std::vector<double>& rates_bps) {
  if (servers.size() != rates_bps.size()) {
    throw std::invalid_argument(
        "build_observation: servers and rates must have the same length");
  }

  Observation obs;
  obs.task_block = normalize_block(std::array{
      pending_task.data_size_bits / kBitsUnit, pending_task.cpu_cycles / kCyclesUnit,
      pending_task.deadline_s});

  obs.server_blocks.reserve(servers.size());
  for (const auto& srv : servers) {
    double queued_cycles = 0.0;
    for (const auto& entry : srv.queue) {
      queued_cycles += entry.task.cpu_cycles;
    }
    obs.server_blocks.push_back(normalize_block(std::array{
        static_cast<double>(srv.queue.size()), queued_cycles / kCyclesUnit,
        srv.max_freq_hz / kFreqUnit, sim::residual_time(srv) / kTimeUnit,
        sim::queue_wait_time(srv) / kTimeUnit}));
  }

  obs.rate_block = normalize_block(rates_bps);

  obs.flattened.reserve(3 + 6 * servers.size());
  obs.flattened.insert(obs.flattened.end(), obs.task_block.begin(), obs.task_block.end());
  for (const auto& block : obs.server_blocks) {
    obs.flattened.insert(obs.flattened.end(), block.begin(), block.end());
  }
  obs.flattened.insert(obs.flattened.end(), obs.rate_block.begin(), obs.rate_block.end());
  return obs;
}

}  // namespace mecrl::env
