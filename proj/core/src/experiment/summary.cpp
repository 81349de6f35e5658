#include "mecrl/experiment/summary.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mecrl::experiment {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    out.push_back(field);
  }
  return out;
}

double parse_double(const std::string& s, std::size_t line_no) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) {
      throw std::invalid_argument(s);
    }
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("metrics CSV: bad numeric field '" + s + "' on line " +
                             std::to_string(line_no));
  }
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

agent::TrainingReport read_metrics_csv(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) {
    throw std::runtime_error("cannot open metrics CSV: " + file.string());
  }
  std::string line;
  if (!std::getline(in, line) || line != agent::TrainingReport::kCsvHeader) {
    throw std::runtime_error("metrics CSV header mismatch in " + file.string());
  }

  agent::TrainingReport report;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    const auto fields = split_csv_line(line);
    if (fields.size() != 7) {
      throw std::runtime_error("metrics CSV: expected 7 fields on line " +
                               std::to_string(line_no) + " of " + file.string());
    }
    agent::EpisodeRow row;
    row.episode = static_cast<std::size_t>(parse_double(fields[0], line_no));
    row.reward_sum = parse_double(fields[1], line_no);
    row.tasks_completed = static_cast<std::size_t>(parse_double(fields[2], line_no));
    row.tasks_failed = static_cast<std::size_t>(parse_double(fields[3], line_no));
    row.energy_j = parse_double(fields[4], line_no);
    row.mean_loss = parse_double(fields[5], line_no);
    row.epsilon = parse_double(fields[6], line_no);
    report.rows.push_back(row);
  }
  return report;
}

RunSummary summarize_report(const agent::TrainingReport& report, std::string source,
                            std::size_t window) {
  if (window == 0) {
    throw std::invalid_argument("summary window must be >= 1");
  }
  RunSummary s;
  s.source = std::move(source);
  s.episodes = report.rows.size();

  double reward_total = 0.0;
  for (const auto& r : report.rows) {
    reward_total += r.reward_sum;
    s.tasks_completed += r.tasks_completed;
    s.tasks_failed += r.tasks_failed;
    s.total_energy_j += r.energy_j;
  }
  if (s.episodes > 0) {
    s.mean_reward = reward_total / static_cast<double>(s.episodes);
    s.mean_energy_j = s.total_energy_j / static_cast<double>(s.episodes);
  }
  const std::size_t decided = s.tasks_completed + s.tasks_failed;
  if (decided > 0) {
    s.completion_rate = static_cast<double>(s.tasks_completed) / static_cast<double>(decided);
  }
  if (s.tasks_completed > 0) {
    s.energy_per_task_j = s.total_energy_j / static_cast<double>(s.tasks_completed);
  }

  // Trailing moving average over at most `window` episodes.
  s.moving_avg_reward.reserve(s.episodes);
  double acc = 0.0;
  for (std::size_t i = 0; i < s.episodes; ++i) {
    acc += report.rows[i].reward_sum;
    if (i >= window) {
      acc -= report.rows[i - window].reward_sum;
    }
    const std::size_t denom = std::min(i + 1, window);
    s.moving_avg_reward.push_back(acc / static_cast<double>(denom));
  }

  const std::size_t tail = std::min(window, s.episodes);
  if (tail > 0) {
    double tail_sum = 0.0;
    for (std::size_t i = s.episodes - tail; i < s.episodes; ++i) {
      tail_sum += report.rows[i].reward_sum;
    }
    s.last_n_mean_reward = tail_sum / static_cast<double>(tail);
  }
  return s;
}

std::vector<RunSummary> summarize(const std::vector<std::filesystem::path>& csv_paths,
                                  std::size_t window) {
  std::vector<RunSummary> out;
  out.reserve(csv_paths.size());
  for (const auto& path : csv_paths) {
    out.push_back(summarize_report(read_metrics_csv(path), path.string(), window));
  }
  return out;
}

std::string summaries_to_csv(const std::vector<RunSummary>& summaries) {
  std::ostringstream out;
  out << RunSummary::kCsvHeader << '\n';
  for (const auto& s : summaries) {
    out << s.source << ',' << s.episodes << ',' << fmt(s.mean_reward) << ','
        << fmt(s.last_n_mean_reward) << ',' << s.tasks_completed << ','
        << s.tasks_failed << ',' << fmt(s.completion_rate) << ','
        << fmt(s.total_energy_j) << ',' << fmt(s.mean_energy_j) << ','
        << fmt(s.energy_per_task_j) << '\n';
  }
  return out.str();
}

}  // namespace mecrl::experiment
