#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mecrl/experiment/spec.hpp"
#include "mecrl/experiment/summary.hpp"

namespace mecrl::experiment {

struct RunArtifacts {
  std::vector<std::filesystem::path> metrics_csvs;
  std::vector<std::filesystem::path> checkpoints;
  std::vector<std::filesystem::path> manifests;
  std::vector<std::filesystem::path> traces;
  std::filesystem::path summary_csv;  // eval and sweep modes
};

// Executes the experiment described by the spec and persists all artifacts
// under spec.output_dir. Every file is written atomically. Training runs
// are fully determined by (spec, seed).
RunArtifacts run(const ExperimentSpec& spec);

// Resolved manifest for one (spec, seed) run; embeds the full spec so the
// manifest itself can be fed back as a config file for an exact re-run.
std::string make_manifest(const ExperimentSpec& spec, std::uint64_t seed,
                          const std::vector<std::string>& artifact_names);

}  // namespace mecrl::experiment
