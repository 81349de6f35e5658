#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mecrl/agent/training.hpp"

namespace mecrl::experiment {

struct RunSummary {
  std::string source;  // path or label of the underlying metrics CSV
  std::size_t episodes = 0;
  double mean_reward = 0.0;
  double last_n_mean_reward = 0.0;  // mean over the final `window` episodes
  std::size_t tasks_completed = 0;
  std::size_t tasks_failed = 0;
  double completion_rate = 0.0;
  double total_energy_j = 0.0;
  double mean_energy_j = 0.0;        // per episode
  double energy_per_task_j = 0.0;    // total energy / on-time completions
  std::vector<double> moving_avg_reward;  // trailing window average per episode

  static constexpr const char* kCsvHeader =
      "source,episodes,mean_reward,last_n_mean_reward,tasks_completed,"
      "tasks_failed,completion_rate,total_energy_j,mean_energy_j,energy_per_task_j";
};

// Parses a metrics CSV produced by TrainingReport::write_csv. Rejects
// files whose header does not match the schema.
agent::TrainingReport read_metrics_csv(const std::filesystem::path& file);

RunSummary summarize_report(const agent::TrainingReport& report,
                            std::string source, std::size_t window = 50);

// Deterministic aggregation of one or more metrics CSVs.
std::vector<RunSummary> summarize(const std::vector<std::filesystem::path>& csv_paths,
                                  std::size_t window = 50);

std::string summaries_to_csv(const std::vector<RunSummary>& summaries);

}  // namespace mecrl::experiment
