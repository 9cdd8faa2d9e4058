#include "schlab/rate.hpp"

#include <cmath>

#include "schlab/green.hpp"
#include "schlab/norms.hpp"
#include "schlab/parallel.hpp"
#include "schlab/rng.hpp"
#include "schlab/transform.hpp"

namespace schlab {

Control residual_control(const Trajectory& g, const Trajectory& u0_traj, const ModelSpec& m,
                         const RateOptions& opt) {
    g.check_axes(u0_traj);
    const GridSpec& grid = g.grid;
    const EigenTable eig(grid);
    const auto tr = CosineTransform::cached(grid.n);
    const double dt = g.dt();
    const std::size_t nf = g.frames.size();
    const std::size_t nm = grid.size();

    double supg = 0.0;
    for (const auto& f : g.frames) supg = std::max(supg, lp_norm(f, 2.0));
    if (lp_norm(g.frames.front(), 2.0) > opt.admissibility_tol * (1.0 + supg))
        throw InadmissibleTargetError();

    double min_sigma = std::numeric_limits<double>::infinity();
    for (const auto& f : u0_traj.frames)
        for (double u : f.values) min_sigma = std::min(min_sigma, std::abs(m.sigma(u)));
    if (min_sigma < opt.sigma_floor) throw DegenerateNoiseError(min_sigma);

    Trajectory v(grid);
    v.times = g.times;
    v.frames.resize(nf, Field(grid));

    std::vector<double> dg(nm), bih(nm), drift(nm);
    for (std::size_t k = 0; k < nf; ++k) {
        // time derivative: centered inside, one-sided at the endpoints
        const Field& cur = g.frames[k];
        if (k == 0) {
            for (std::size_t i = 0; i < nm; ++i)
                dg[i] = (g.frames[1][i] - g.frames[0][i]) / dt;
        } else if (k + 1 == nf) {
            for (std::size_t i = 0; i < nm; ++i)
                dg[i] = (g.frames[nf - 1][i] - g.frames[nf - 2][i]) / dt;
        } else {
            for (std::size_t i = 0; i < nm; ++i)
                dg[i] = (g.frames[k + 1][i] - g.frames[k - 1][i]) / (2.0 * dt);
        }

        // Lap^2 g, spectrally
        bih = cur.values;
        tr->forward(bih, grid.d);
        for (std::size_t i = 0; i < nm; ++i) bih[i] *= eig.lambda[i];
        tr->inverse(bih, grid.d);

        // Lap(f'(u0) g), spectrally
        const Field& u0f = u0_traj.frames[k];
        for (std::size_t i = 0; i < nm; ++i)
            drift[i] = m.f_prime_scalar(u0f[i]) * cur[i];
        tr->forward(drift, grid.d);
        for (std::size_t i = 0; i < nm; ++i) drift[i] *= -eig.lap[i];
        tr->inverse(drift, grid.d);

        Field& vk = v.frames[k];
        for (std::size_t i = 0; i < nm; ++i)
            vk[i] = (dg[i] + bih[i] - drift[i]) / m.sigma(u0f[i]);
    }
    return make_control(std::move(v));
}

RateResult rate_eval(const Trajectory& g, const Trajectory& u0_traj, const ModelSpec& m,
                     const RateOptions& opt) {
    RateResult res;
    try {
        res.control = residual_control(g, u0_traj, m, opt);
    } catch (const InadmissibleTargetError&) {
        res.value = std::numeric_limits<double>::infinity();
        return res;
    }
    res.value = res.control.l2_cost;

    const Trajectory z = solve_skeleton(res.control, u0_traj, m);
    res.residual_times = g.times;
    res.residual_l2.resize(g.frames.size());
    double sup_res = 0.0, supg = 0.0;
    for (std::size_t k = 0; k < g.frames.size(); ++k) {
        res.residual_l2[k] = lp_diff_norm(z.frames[k], g.frames[k], 2.0);
        sup_res = std::max(sup_res, res.residual_l2[k]);
        supg = std::max(supg, lp_norm(g.frames[k], 2.0));
    }
    res.residual_rel = supg > 0.0 ? sup_res / supg : sup_res;
    return res;
}

LdpProbeResult ldp_bound_probe(const std::vector<double>& eps_list, const ScalingSpec& sc,
                               const Trajectory& center, double radius, int replicas,
                               const ModelSpec& m, std::uint64_t seed, int jobs,
                               const Trajectory* u0_traj) {
    if (replicas < 100)
        throw std::invalid_argument("ldp_bound_probe: needs at least 100 replicas");

    Trajectory u0_local;
    if (!u0_traj) {
        u0_local = solve_u0(m);
        u0_traj = &u0_local;
    }
    center.check_axes(*u0_traj);

    LdpProbeResult out;
    const RateResult rr = rate_eval(center, *u0_traj, m);
    out.rate_at_center = rr.value;
    // first-order radius correction; heuristic diagnostic only
    if (std::isfinite(rr.value)) {
        const double root = std::max(0.0, std::sqrt(2.0 * rr.value) - radius);
        out.ball_rate_estimate = 0.5 * root * root;
    } else {
        out.ball_rate_estimate = std::numeric_limits<double>::infinity();
    }

    for (double eps : eps_list) {
        const double h = sc.h(eps);
        std::vector<char> hit(static_cast<std::size_t>(replicas), 0);
        parallel_for(jobs, replicas, [&](int r) {
            const NoisePath noise = generate_noise(derive_seed(seed, static_cast<std::uint64_t>(r)), m.grid);
            const Trajectory ue = solve_u_eps(eps, noise, m);
            const double scale = 1.0 / (std::sqrt(eps) * h);
            double sup = 0.0;
            Field diff(m.grid);
            for (std::size_t k = 0; k < ue.frames.size(); ++k) {
                const Field& a = ue.frames[k];
                const Field& b = u0_traj->frames[k];
                const Field& c = center.frames[k];
                for (std::size_t i = 0; i < diff.size(); ++i)
                    diff[i] = (a[i] - b[i]) * scale - c[i];
                sup = std::max(sup, lp_norm(diff, 2.0));
            }
            hit[static_cast<std::size_t>(r)] = sup <= radius ? 1 : 0;
        });
        LdpProbeCell cell;
        cell.eps = eps;
        cell.h = h;
        cell.replicas = replicas;
        for (char c : hit) cell.hits += c;
        if (cell.hits == 0) {
            cell.one_sided = true;
            cell.log_prob_normalized = std::log(0.5 / replicas) / (h * h);
        } else {
            cell.log_prob_normalized =
                std::log(static_cast<double>(cell.hits) / replicas) / (h * h);
        }
        out.cells.push_back(cell);
    }
    return out;
}

}  // namespace schlab
