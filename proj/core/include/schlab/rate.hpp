// Rate functional I(g) = 1/2 ||v||^2 for the unique control v that
// drives the skeleton equation to g. With sigma bounded away from zero
// along u0 the infimum collapses to one residual inversion
//   v = [d/dt g + Lap^2 g - Lap(f'(u0) g)] / sigma(u0);
// a vanishing sigma is a genuine optimization problem and is rejected.
#pragma once

#include <limits>

#include "schlab/deterministic.hpp"
#include "schlab/model.hpp"
#include "schlab/stochastic.hpp"

namespace schlab {

class DegenerateNoiseError : public std::runtime_error {
  public:
    explicit DegenerateNoiseError(double min_sigma)
        : std::runtime_error("sigma(u0) falls below the inversion floor (min |sigma| = " +
                             std::to_string(min_sigma) + ")") {}
};

class InadmissibleTargetError : public std::runtime_error {
  public:
    InadmissibleTargetError() : std::runtime_error("target has g(0) != 0; rate is +infinity") {}
};

struct RateOptions {
    double sigma_floor = 1e-6;
    double admissibility_tol = 1e-9;  // on ||g(0)||_2 relative to sup ||g||_2
};

struct RateResult {
    double value = 0.0;                  // I(g); +infinity for inadmissible targets
    Control control;                     // recovered v (empty when value is infinite)
    std::vector<double> residual_times;  // per-time L2 mismatch of the re-solve
    std::vector<double> residual_l2;
    double residual_rel = 0.0;  // sup_t residual over sup_t ||g||_2

    bool infinite() const { return !std::isfinite(value); }
};

// Inverts the skeleton equation for the control that produces g.
Control residual_control(const Trajectory& g, const Trajectory& u0_traj, const ModelSpec& m,
                         const RateOptions& opt = {});

// I(g) plus the round-trip residual report; inadmissible targets yield
// the +infinity branch instead of throwing.
RateResult rate_eval(const Trajectory& g, const Trajectory& u0_traj, const ModelSpec& m,
                     const RateOptions& opt = {});

struct LdpProbeCell {
    double eps = 0.0;
    double h = 0.0;
    int hits = 0;
    int replicas = 0;
    double log_prob_normalized = 0.0;  // log(hits/replicas) / h^2
    bool one_sided = false;            // zero hits: value is an upper bound only
};

struct LdpProbeResult {
    std::vector<LdpProbeCell> cells;
    double rate_at_center = 0.0;
    double ball_rate_estimate = 0.0;  // heuristic inf over the ball
};

// Desk-scale diagnostic for the deviation bounds: empirical normalized
// log-probabilities of a trajectory ball against the rate value at its
// center. Ball membership uses sup_t ||.||_2. Never asserts limits.
LdpProbeResult ldp_bound_probe(const std::vector<double>& eps_list, const ScalingSpec& sc,
                               const Trajectory& center, double radius, int replicas,
                               const ModelSpec& m, std::uint64_t seed, int jobs = 1,
                               const Trajectory* u0_traj = nullptr);

}  // namespace schlab
