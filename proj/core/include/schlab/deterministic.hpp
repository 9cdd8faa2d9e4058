// Deterministic dynamics: the zero-noise flow u0 and the linear
// skeleton equation driven by sigma(u0) v.
#pragma once

#include "schlab/model.hpp"
#include "schlab/stepper.hpp"
#include "schlab/trajectory.hpp"

namespace schlab {

// Convenience single-step form of the exponential Euler map.
SpectralField step_deterministic(const SpectralField& u, double dt, const ModelSpec& m);

// Integrates du/dt = -Lap^2 u + Lap f(u) from the model's initial datum.
Trajectory solve_u0(const ModelSpec& m);

// Integrates dZ/dt = -Lap^2 Z + Lap(f'(u0) Z) + sigma(u0) v, Z(0) = 0.
Trajectory solve_skeleton(const Control& v, const Trajectory& u0_traj, const ModelSpec& m);

// Wraps a trajectory of control values with its quadratic cost
// (trapezoid in time, collocation quadrature in space).
Control make_control(Trajectory v, std::optional<double> bound_N = std::nullopt);

// 1/2 * space-time quadrature of v^2 over the trajectory.
double control_cost(const Trajectory& v);

}  // namespace schlab
