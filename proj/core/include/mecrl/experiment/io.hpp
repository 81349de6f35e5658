#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

namespace mecrl::experiment {

// Writes content to a temporary sibling file and renames it into place, so
// an interrupted run never leaves a truncated artifact behind.
void write_file_atomic(const std::filesystem::path& target, const std::string& content);

std::string read_file(const std::filesystem::path& file);

// FNV-1a 64-bit content hash, hex-encoded; identifies resolved configs in
// run manifests.
std::string fnv1a64_hex(const std::string& content);

}  // namespace mecrl::experiment
