#include "schlab/norms.hpp"

#include <cmath>

namespace schlab {

double lp_norm(const Field& f, double p) {
    if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
    const double w = f.grid.cell_volume();
    double acc = 0.0;
    if (p == 2.0) {
        for (double v : f.values) acc += v * v;
    } else if (p == 1.0) {
        for (double v : f.values) acc += std::abs(v);
    } else {
        for (double v : f.values) acc += std::pow(std::abs(v), p);
    }
    return std::pow(acc * w, 1.0 / p);
}

double lp_diff_norm(const Field& a, const Field& b, double p) {
    if (a.size() != b.size()) throw std::invalid_argument("lp_diff_norm: size mismatch");
    const double w = a.grid.cell_volume();
    double acc = 0.0;
    if (p == 2.0) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double dv = a[i] - b[i];
            acc += dv * dv;
        }
    } else {
        for (std::size_t i = 0; i < a.size(); ++i)
            acc += std::pow(std::abs(a[i] - b[i]), p);
    }
    return std::pow(acc * w, 1.0 / p);
}

double sup_lp(const Trajectory& tr, double p) {
    double best = 0.0;
    for (const auto& f : tr.frames) best = std::max(best, lp_norm(f, p));
    return best;
}

double holder_norm(const Trajectory& tr, const NormSpec& ns) {
    ns.validate();
    if (tr.times.size() < 2)
        throw std::invalid_argument("holder_norm: trajectory needs >= 2 time points");
    double quot = 0.0;
    const std::size_t m = tr.times.size();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const double gap = tr.times[j] - tr.times[i];
            const double num = lp_diff_norm(tr.frames[j], tr.frames[i], ns.p);
            quot = std::max(quot, num / std::pow(gap, ns.alpha));
        }
    }
    return sup_lp(tr, ns.p) + quot;
}

double continuity_modulus(const Trajectory& tr, const NormSpec& ns, double delta) {
    ns.validate();
    if (delta < tr.dt())
        throw std::invalid_argument("continuity_modulus: delta below the time step");
    double quot = 0.0;
    const std::size_t m = tr.times.size();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const double gap = tr.times[j] - tr.times[i];
            if (!(gap < delta)) break;
            const double num = lp_diff_norm(tr.frames[j], tr.frames[i], ns.p);
            quot = std::max(quot, num / std::pow(gap, ns.alpha));
        }
    }
    return quot;
}

}  // namespace schlab
