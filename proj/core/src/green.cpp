#include "schlab/green.hpp"

#include <cmath>

#include "schlab/transform.hpp"

namespace schlab {

EigenTable::EigenTable(const GridSpec& g) : grid(g) {
    g.validate();
    const std::size_t m = g.size();
    lambda.resize(m);
    lap.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto k = unrank_mode(i, g);
        double ksq = 0.0;
        for (int a = 0; a < g.d; ++a) ksq += static_cast<double>(k[a]) * k[a];
        lap[i] = ksq;
        lambda[i] = ksq * ksq;
    }
}

void semigroup_apply_inplace(SpectralField& c, double t, const EigenTable& eig) {
    if (t < 0.0) throw std::invalid_argument("semigroup_apply: negative time");
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= std::exp(-eig.lambda[i] * t);
}

SpectralField semigroup_apply(const SpectralField& c, double t, const EigenTable& eig) {
    SpectralField out = c;
    semigroup_apply_inplace(out, t, eig);
    return out;
}

namespace {

double phi_sq(std::size_t idx, const std::array<double, 3>& x, const GridSpec& g) {
    const auto k = unrank_mode(idx, g);
    const double v = eigenfunction(k, x.data(), g.d);
    return v * v;
}

}  // namespace

double kernel_l2_profile(double t, std::array<double, 3> x, const EigenTable& eig) {
    if (!(t > 0.0)) throw std::invalid_argument("kernel_l2_profile: t must be > 0");
    double acc = 0.0;
    for (std::size_t i = 0; i < eig.lambda.size(); ++i)
        acc += std::exp(-2.0 * eig.lambda[i] * t) * phi_sq(i, x, eig.grid);
    return acc;
}

double spacetime_l2(double t0, double t, std::array<double, 3> x, const EigenTable& eig) {
    if (!(t0 >= 0.0 && t > t0)) throw std::invalid_argument("spacetime_l2: need 0 <= t0 < t");
    const double tau = t - t0;
    double acc = 0.0;
    for (std::size_t i = 0; i < eig.lambda.size(); ++i) {
        const double lam = eig.lambda[i];
        const double weight = lam > 0.0 ? (1.0 - std::exp(-2.0 * lam * tau)) / (2.0 * lam) : tau;
        acc += weight * phi_sq(i, x, eig.grid);
    }
    return acc;
}

Field j_operator(const Trajectory& v, double t0, double t, const EigenTable& eig) {
    if (!(t > t0)) throw std::invalid_argument("j_operator: empty time range");
    const std::size_t i0 = v.index_of(t0);
    const std::size_t i1 = v.index_of(t);
    const double dt = v.dt();

    SpectralField acc(v.grid, 0.0);
    SpectralField vhat;
    for (std::size_t m = i0; m < i1; ++m) {
        to_spectral(v.frames[m], vhat);
        const double s_end = v.times[m + 1];
        for (std::size_t i = 0; i < acc.size(); ++i) {
            const double lam = eig.lambda[i];
            // integral of exp(-lam (t-s)) ds over one step, v frozen at s_m
            const double q = lam > 0.0
                                 ? std::exp(-lam * (t - s_end)) * (1.0 - std::exp(-lam * dt)) / lam
                                 : dt;
            acc[i] += -eig.lap[i] * q * vhat[i];
        }
    }
    return to_physical(acc);
}

}  // namespace schlab
