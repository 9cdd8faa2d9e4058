// Experiment engine: the coupled-path deviation-rate study, temporal
// regularity study, deviation-scale sweep with ball-probability probe,
// and the kernel-estimate exponent fits. Every study emits long-format
// rows for CSV output plus a list of assertions with a tri-state
// outcome; `inconclusive` (Monte Carlo error too large, or a config
// outside the study's validity envelope) is distinct from pass/fail.
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "schlab/model.hpp"
#include "schlab/norms.hpp"
#include "schlab/stats.hpp"

namespace schlab {

enum class StudyStatus { pass, fail, inconclusive };

std::string to_string(StudyStatus s);

struct Assertion {
    std::string name;
    double value = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    StudyStatus status = StudyStatus::inconclusive;
    std::string note;
};

// One long-format result row: fixed columns, free-form cell keys.
struct CsvRow {
    std::string study;
    std::vector<std::pair<std::string, std::string>> keys;
    std::string quantity;
    double estimate = 0.0;
    double se = 0.0;
    int count = 0;
};

struct StudyReport {
    std::string study;
    std::vector<CsvRow> rows;
    std::vector<Assertion> assertions;

    StudyStatus status() const;
    const Assertion* find(const std::string& name) const;
};

// Applies the interval-based slope rule: inconclusive unless the slope
// standard error is below a third of the band half-width.
Assertion slope_assertion(const std::string& name, const SlopeFit& fit, double lo, double hi);

// ---------------------------------------------------------------------------

struct CltStudyConfig {
    ModelSpec model;
    std::vector<double> eps_list{1e-2, 3e-3, 1e-3, 3e-4, 1e-4};
    int replicas = 200;
    NormSpec norms{2.0, 2.0, 0.2};
    std::uint64_t seed = 1;
    int jobs = 1;
    int holder_subsample = 25;  // frame stride for the path-norm surrogate
};

// Coupled estimate of E||V^eps|| for V^eps = (u^eps - u0)/sqrt(eps) - Y
// with weighted log-log slopes for the first and second moments.
StudyReport clt_study(const CltStudyConfig& cfg);

// ---------------------------------------------------------------------------

struct HolderStudyConfig {
    ModelSpec model;
    enum class Process { u_eps, y, u0 };
    Process process = Process::y;
    double eps = 1e-2;  // only for Process::u_eps
    int replicas = 100;
    NormSpec norms{2.0, 2.0, 0.2};
    int lag_points = 9;
    int anchors = 5;
    std::uint64_t seed = 1;
    int jobs = 1;
    // assertion band on the measured increment-moment exponent; when
    // unset a default derived from (d, gamma, process) is used
    double band_lo = -1.0;
    double band_hi = -1.0;
};

// Log-log slope of E||X(t+tau) - X(t)||_p over two decades of lags.
StudyReport holder_study(const HolderStudyConfig& cfg);

// ---------------------------------------------------------------------------

struct MdpStudyConfig {
    ModelSpec model;
    ScalingSpec scaling;                       // primary scale family
    std::vector<double> theta_grid{0.1, 0.25, 0.4};
    int replicas = 200;
    std::uint64_t seed = 1;
    int jobs = 1;
    bool with_probe = true;
    int min_hits = 30;
};

// Scale sweep of ||Z^eps|| with the controlled-equation cross-check,
// the two-target ball-probability ordering probe, and the monotonicity
// diagnostics.
StudyReport mdp_scaling_sweep(const MdpStudyConfig& cfg);

// ---------------------------------------------------------------------------

struct KernelStudyConfig {
    std::vector<int> dims{1, 2};
    double t_lo = 1e-4;
    double t_hi = 1e-2;
    int t_points = 13;
    double slope_tol_d1 = 0.03;
    double slope_tol_d2 = 0.05;
};

// Exponent fits for the kernel L2 profile and its space-time integral,
// plus measured operator constants on the admissible (p, rho, beta)
// lattice.
StudyReport kernel_estimate_fits(const KernelStudyConfig& cfg);

// resolution used for the kernel study per dimension
int kernel_study_resolution(int d);

// Validity of the (p, rho) pair for the bounded-operator estimates;
// throws on the excluded combinations.
double lemma_kappa(int d, double p, double rho);

}  // namespace schlab
