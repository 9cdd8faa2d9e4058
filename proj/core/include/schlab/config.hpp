// Run configuration: strict-keyed JSON in, canonical resolved echo out.
// The echo (and the digest derived from it) excludes execution-only
// context such as the worker count and output paths, so numeric
// artifacts are invariant under --jobs.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "schlab/model.hpp"
#include "schlab/norms.hpp"

namespace schlab {

struct StudyParams {
    // holder
    std::string holder_process = "y";
    double holder_band_lo = -1.0;
    double holder_band_hi = -1.0;
    // simulate
    double simulate_eps = 0.0;
    bool binary_trajectory = false;
    // rate
    double rate_tolerance = 0.05;
    double homogeneity_tolerance = 0.01;
    // mdp
    bool mdp_probe = true;
};

struct RunConfig {
    std::string study;  // simulate | clt | holder | mdp | kernel | rate
    std::uint64_t seed = 0;
    bool seed_set = false;
    int replicas = 200;
    std::string output_dir = "out";
    GridSpec grid{1, 64, 0.1, 2000};
    ModelSpec model;
    ScalingSpec scaling;
    NormSpec norms{2.0, 2.0, 0.2};
    StudyParams params;
    int jobs = 1;  // execution context; not part of the echo/digest

    RunConfig();
};

// Strict parse: unknown keys and malformed values are errors naming the
// offending field.
RunConfig parse_config_json(const std::string& json_text);
RunConfig parse_config_file(const std::string& path);

// Empty when valid; otherwise one diagnostic per violated condition,
// each naming the hypothesis label (H.1..H.4) or scale regime it breaks.
std::vector<std::string> validate_config(const RunConfig& cfg);

// Canonical resolved echo (sorted keys, shortest round-trip numbers).
// parse(echo(cfg)) == cfg up to the excluded execution fields.
std::string echo_config_json(const RunConfig& cfg);

std::string config_digest(const RunConfig& cfg);

}  // namespace schlab
