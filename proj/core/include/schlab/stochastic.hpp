// Stochastic dynamics driven by a replayable spectral noise record:
// the perturbed flow u^eps, its Gaussian fluctuation limit Y, and the
// controlled process Z^{eps,v}. All of them can share one NoisePath,
// which is what makes coupled differences (u^eps - u0)/sqrt(eps) - Y
// meaningful path by path.
#pragma once

#include <cstdint>
#include <optional>

#include "schlab/model.hpp"
#include "schlab/stepper.hpp"
#include "schlab/trajectory.hpp"

namespace schlab {

// Seeded record of per-mode Brownian increments, variance dt each.
// Fully determined by (seed, grid, nt); replay is bit-identical.
struct NoisePath {
    std::uint64_t seed = 0;
    GridSpec grid;
    std::vector<double> increments;  // [step * nmodes + mode]

    const double* step(std::size_t m) const { return &increments[m * grid.size()]; }

    // Sum consecutive increments into a coarser path (dt' = factor*dt)
    // on the same Brownian motion; used by refinement studies.
    NoisePath coarsened(int factor) const;
};

NoisePath generate_noise(std::uint64_t seed, const GridSpec& grid);

// Single step of the perturbed equation (convenience form).
SpectralField step_spde(const SpectralField& u, const double* dW, double eps,
                        const ModelSpec& m);

// Full path of u^eps from the model's initial datum. eps = 0 reduces
// exactly to the deterministic flow.
Trajectory solve_u_eps(double eps, const NoisePath& noise, const ModelSpec& m);

// Linear fluctuation equation around u0, driven by the same increments.
Trajectory solve_Y(const NoisePath& noise, const Trajectory& u0_traj, const ModelSpec& m);

// Controlled process Z^{eps,v}; null control or null noise switch those
// sources off (noise off is a test hook; the controlled equation then
// degenerates toward the skeleton as eps -> 0).
Trajectory solve_controlled(double eps, const Control* v, const NoisePath* noise,
                            const Trajectory& u0_traj, const ScalingSpec& sc,
                            const ModelSpec& m);

struct CoupledFluctuation {
    Trajectory u_eps;
    Trajectory y;
    Trajectory v_eps;  // (u^eps - u0)/sqrt(eps) - Y, frame by frame
};

// Runs u^eps and Y on the identical noise path. u0_traj may be supplied
// to avoid recomputing the deterministic flow.
CoupledFluctuation coupled_fluctuation(double eps, const NoisePath& noise, const ModelSpec& m,
                                       const Trajectory* u0_traj = nullptr);

}  // namespace schlab
