// Executes the study named by a RunConfig and persists its artifacts.
// Exit status contract: 0 pass, 1 error, 2 fail, 3 inconclusive.
#pragma once

#include <string>

#include "schlab/config.hpp"
#include "schlab/lab.hpp"

namespace schlab {

struct RunResult {
    std::string run_dir;
    StudyStatus status = StudyStatus::inconclusive;
    StudyReport report;
    int exit_code = 1;
};

// Validates, executes, and writes <run_dir>/{<study>.csv, summary.json,
// manifest.json} (manifest last). Throws on configuration or I/O errors.
RunResult run_study(const RunConfig& cfg);

// Executes without touching the filesystem; used by tests and `report`.
StudyReport execute_study(const RunConfig& cfg);

// Deterministic summary payload (no timings, no worker counts).
std::string summary_json(const RunConfig& cfg, const StudyReport& rep);

int exit_code_for(StudyStatus s);

}  // namespace schlab
