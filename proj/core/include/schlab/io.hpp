// Artifact layer: run directories are append-only (each invocation gets
// a fresh run_#### subdirectory and the manifest is written last, as the
// completion marker). CSV payloads embed the seed and the resolved
// config so results stay attributable; doubles print as %.17g so
// identical runs produce identical bytes.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "schlab/lab.hpp"
#include "schlab/trajectory.hpp"

namespace schlab {

std::string format_double(double v);

// Creates <root>/run_#### with the first unused index; returns its path.
std::string make_run_dir(const std::string& output_root);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// Long-format CSV: header comments, then
// study,<keys>,quantity,estimate,se,count with a stable key-column union.
std::string study_csv(const StudyReport& rep, std::uint64_t seed,
                      const std::string& config_echo);

// time, v0..v{n^d-1} rows of physical values
std::string trajectory_csv(const Trajectory& tr, std::uint64_t seed,
                           const std::string& config_echo);
// time, m0..m{n^d-1} rows of eigenbasis coefficients
std::string trajectory_modes_csv(const Trajectory& tr, std::uint64_t seed,
                                 const std::string& config_echo);

// columnar binary layout: magic, dims, times, frames
void write_trajectory_binary(const std::string& path, const Trajectory& tr);
Trajectory read_trajectory_binary(const std::string& path);

std::uint64_t fnv1a64(const std::string& data);
std::string hex64(std::uint64_t v);

}  // namespace schlab
