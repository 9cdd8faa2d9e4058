#include "schlab/deterministic.hpp"

#include <cmath>

#include "schlab/transform.hpp"

namespace schlab {

SpectralField step_deterministic(const SpectralField& u, double dt, const ModelSpec& m) {
    if (!(dt > 0.0)) throw std::invalid_argument("step_deterministic: dt must be > 0");
    GridSpec g = u.grid;
    g.T = dt;
    g.nt = 1;
    Stepper st(g, m);
    SpectralField out = u;
    st.deterministic(out);
    return out;
}

Trajectory solve_u0(const ModelSpec& m) {
    const GridSpec& g = m.grid;
    Trajectory traj(g);
    Stepper st(g, m);

    SpectralField uhat = to_spectral(m.u0.realize(g));
    for (int k = 0; k <= g.nt; ++k) {
        traj.times.push_back(k * g.dt());
        traj.frames.push_back(to_physical(uhat));
        if (k == g.nt) break;
        st.set_step_index(static_cast<std::size_t>(k));
        st.deterministic(uhat);
    }
    return traj;
}

Trajectory solve_skeleton(const Control& v, const Trajectory& u0_traj, const ModelSpec& m) {
    v.trajectory.check_axes(u0_traj);
    const GridSpec& g = m.grid;
    if (!g.same_axes(u0_traj.grid))
        throw std::invalid_argument("solve_skeleton: model/trajectory axis mismatch");

    Trajectory traj(g);
    Stepper st(g, m);
    SpectralField zhat(g, 0.0);
    for (int k = 0; k <= g.nt; ++k) {
        traj.times.push_back(k * g.dt());
        traj.frames.push_back(to_physical(zhat));
        if (k == g.nt) break;
        st.set_step_index(static_cast<std::size_t>(k));
        st.skeleton(zhat, u0_traj.frames[static_cast<std::size_t>(k)],
                    v.trajectory.frames[static_cast<std::size_t>(k)]);
    }
    return traj;
}

double control_cost(const Trajectory& v) {
    const double w = v.grid.cell_volume();
    const double dt = v.dt();
    double acc = 0.0;
    for (std::size_t k = 0; k < v.frames.size(); ++k) {
        double s = 0.0;
        for (double x : v.frames[k].values) s += x * x;
        const double tw = (k == 0 || k + 1 == v.frames.size()) ? 0.5 * dt : dt;
        acc += tw * s * w;
    }
    return 0.5 * acc;
}

Control make_control(Trajectory v, std::optional<double> bound_N) {
    Control c;
    c.l2_cost = control_cost(v);
    c.trajectory = std::move(v);
    c.bound_N = bound_N;
    c.check_admissible();
    return c;
}

}  // namespace schlab
