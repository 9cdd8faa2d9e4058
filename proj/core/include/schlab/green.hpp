// Semigroup of d/dt + Laplacian^2 with Neumann conditions. Diagonal in
// the cosine eigenbasis with factors exp(-lambda_k t),
// lambda_k = (sum_i k_i^2)^2. The kernel itself is never materialized;
// modal identities below give its L^2 profiles exactly (up to mode
// truncation at n per axis).
#pragma once

#include <array>

#include "schlab/grid.hpp"
#include "schlab/trajectory.hpp"

namespace schlab {

struct EigenTable {
    GridSpec grid;
    std::vector<double> lambda;  // (|k|^2)^2, biharmonic eigenvalues
    std::vector<double> lap;     // |k|^2, Laplacian multiplier magnitude

    explicit EigenTable(const GridSpec& g);
};

// c_k <- exp(-lambda_k t) c_k; the mean mode k=0 is unchanged.
SpectralField semigroup_apply(const SpectralField& c, double t, const EigenTable& eig);
void semigroup_apply_inplace(SpectralField& c, double t, const EigenTable& eig);

// integral over D of G_t(x,y)^2 dy = sum_k exp(-2 lambda_k t) phi_k(x)^2
double kernel_l2_profile(double t, std::array<double, 3> x, const EigenTable& eig);

// integral over [t0,t] x D of G_{t-s}(x,y)^2 dy ds, exact modal form
double spacetime_l2(double t0, double t, std::array<double, 3> x, const EigenTable& eig);

// J(v)(t0,t,x) = integral of Delta G_{t-s} v(s) over [t0,t] x D,
// evaluated mode-wise with the per-step exponential quadrature that
// freezes v at the left endpoint of each step.
Field j_operator(const Trajectory& v, double t0, double t, const EigenTable& eig);

}  // namespace schlab
