#include "schlab/stochastic.hpp"

#include <cmath>

#include "schlab/deterministic.hpp"
#include "schlab/rng.hpp"
#include "schlab/transform.hpp"

namespace schlab {

NoisePath generate_noise(std::uint64_t seed, const GridSpec& grid) {
    grid.validate();
    NoisePath path;
    path.seed = seed;
    path.grid = grid;
    const std::size_t nmodes = grid.size();
    path.increments.resize(static_cast<std::size_t>(grid.nt) * nmodes);
    GaussianStream gs(seed);
    const double root_dt = std::sqrt(grid.dt());
    for (double& x : path.increments) x = root_dt * gs.next();
    return path;
}

NoisePath NoisePath::coarsened(int factor) const {
    if (factor < 1 || grid.nt % factor != 0)
        throw std::invalid_argument("NoisePath: coarsening factor must divide nt");
    NoisePath out;
    out.seed = seed;
    out.grid = grid;
    out.grid.nt = grid.nt / factor;
    const std::size_t nmodes = grid.size();
    out.increments.assign(static_cast<std::size_t>(out.grid.nt) * nmodes, 0.0);
    for (int m = 0; m < grid.nt; ++m) {
        const std::size_t mc = static_cast<std::size_t>(m / factor);
        const double* src = &increments[static_cast<std::size_t>(m) * nmodes];
        double* dst = &out.increments[mc * nmodes];
        for (std::size_t i = 0; i < nmodes; ++i) dst[i] += src[i];
    }
    return out;
}

SpectralField step_spde(const SpectralField& u, const double* dW, double eps,
                        const ModelSpec& m) {
    if (eps < 0.0) throw std::invalid_argument("step_spde: eps must be >= 0");
    Stepper st(u.grid, m);
    SpectralField out = u;
    if (eps == 0.0)
        st.deterministic(out);
    else
        st.stochastic(out, dW, std::sqrt(eps));
    return out;
}

Trajectory solve_u_eps(double eps, const NoisePath& noise, const ModelSpec& m) {
    if (eps < 0.0 || eps > 1.0)
        throw std::invalid_argument("solve_u_eps: eps must lie in [0, 1]");
    const GridSpec& g = m.grid;
    if (!g.same_axes(noise.grid))
        throw std::invalid_argument("solve_u_eps: noise/model axis mismatch");

    Trajectory traj(g);
    Stepper st(g, m);
    SpectralField uhat = to_spectral(m.u0.realize(g));
    const double sqrt_eps = std::sqrt(eps);
    for (int k = 0; k <= g.nt; ++k) {
        traj.times.push_back(k * g.dt());
        traj.frames.push_back(to_physical(uhat));
        if (k == g.nt) break;
        st.set_step_index(static_cast<std::size_t>(k));
        if (eps == 0.0)
            st.deterministic(uhat);
        else
            st.stochastic(uhat, noise.step(static_cast<std::size_t>(k)), sqrt_eps);
    }
    return traj;
}

Trajectory solve_Y(const NoisePath& noise, const Trajectory& u0_traj, const ModelSpec& m) {
    const GridSpec& g = m.grid;
    if (!g.same_axes(noise.grid) || !g.same_axes(u0_traj.grid))
        throw std::invalid_argument("solve_Y: axis mismatch");

    Trajectory traj(g);
    Stepper st(g, m);
    SpectralField yhat(g, 0.0);
    for (int k = 0; k <= g.nt; ++k) {
        traj.times.push_back(k * g.dt());
        traj.frames.push_back(to_physical(yhat));
        if (k == g.nt) break;
        st.set_step_index(static_cast<std::size_t>(k));
        st.fluctuation(yhat, u0_traj.frames[static_cast<std::size_t>(k)],
                       noise.step(static_cast<std::size_t>(k)));
    }
    return traj;
}

Trajectory solve_controlled(double eps, const Control* v, const NoisePath* noise,
                            const Trajectory& u0_traj, const ScalingSpec& sc,
                            const ModelSpec& m) {
    if (!(eps > 0.0 && eps <= 1.0))
        throw std::invalid_argument("solve_controlled: eps must lie in (0, 1]");
    const GridSpec& g = m.grid;
    if (!g.same_axes(u0_traj.grid))
        throw std::invalid_argument("solve_controlled: axis mismatch");
    if (v) v->trajectory.check_axes(u0_traj);
    if (noise && !g.same_axes(noise->grid))
        throw std::invalid_argument("solve_controlled: noise axis mismatch");

    const double h = sc.h(eps);
    Trajectory traj(g);
    Stepper st(g, m);
    SpectralField zhat(g, 0.0);
    for (int k = 0; k <= g.nt; ++k) {
        traj.times.push_back(k * g.dt());
        traj.frames.push_back(to_physical(zhat));
        if (k == g.nt) break;
        st.set_step_index(static_cast<std::size_t>(k));
        const auto ku = static_cast<std::size_t>(k);
        st.controlled(zhat, u0_traj.frames[ku],
                      v ? &v->trajectory.frames[ku] : nullptr,
                      noise ? noise->step(ku) : nullptr, eps, h);
    }
    return traj;
}

CoupledFluctuation coupled_fluctuation(double eps, const NoisePath& noise, const ModelSpec& m,
                                       const Trajectory* u0_traj) {
    if (!(eps > 0.0)) throw std::invalid_argument("coupled_fluctuation: eps must be > 0");
    Trajectory u0_local;
    if (!u0_traj) {
        u0_local = solve_u0(m);
        u0_traj = &u0_local;
    }
    CoupledFluctuation out;
    out.u_eps = solve_u_eps(eps, noise, m);
    out.y = solve_Y(noise, *u0_traj, m);

    out.v_eps.grid = m.grid;
    out.v_eps.times = out.u_eps.times;
    const double rs = 1.0 / std::sqrt(eps);
    out.v_eps.frames.reserve(out.u_eps.frames.size());
    for (std::size_t k = 0; k < out.u_eps.frames.size(); ++k) {
        Field f(m.grid);
        const Field& ue = out.u_eps.frames[k];
        const Field& u0f = u0_traj->frames[k];
        const Field& yf = out.y.frames[k];
        for (std::size_t i = 0; i < f.size(); ++i)
            f[i] = (ue[i] - u0f[i]) * rs - yf[i];
        out.v_eps.frames.push_back(std::move(f));
    }
    return out;
}

}  // namespace schlab
