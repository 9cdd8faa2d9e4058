#include "schlab/stats.hpp"

#include <algorithm>

namespace schlab {

MeanEstimate mean_with_se(const std::vector<double>& xs) {
    MeanEstimate e;
    e.count = static_cast<int>(xs.size());
    if (xs.empty()) return e;
    double s = 0.0;
    for (double x : xs) s += x;
    e.mean = s / xs.size();
    if (xs.size() > 1) {
        double v = 0.0;
        for (double x : xs) v += (x - e.mean) * (x - e.mean);
        v /= (xs.size() - 1.0);
        e.se = std::sqrt(v / xs.size());
    }
    return e;
}

double sample_variance(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    double m = 0.0;
    for (double x : xs) m += x;
    m /= xs.size();
    double v = 0.0;
    for (double x : xs) v += (x - m) * (x - m);
    return v / (xs.size() - 1.0);
}

double quantile(std::vector<double> xs, double q) {
    if (xs.empty()) throw std::invalid_argument("quantile: empty sample");
    std::sort(xs.begin(), xs.end());
    const double pos = q * (xs.size() - 1.0);
    const auto lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, xs.size() - 1);
    const double frac = pos - lo;
    return xs[lo] * (1.0 - frac) + xs[hi] * frac;
}

SlopeFit loglog_fit(const std::vector<double>& xs, const std::vector<double>& ys,
                    const std::vector<double>& ses) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("loglog_fit: need matching samples, at least 2");
    const std::size_t m = xs.size();
    std::vector<double> w(m, 1.0);
    if (!ses.empty()) {
        if (ses.size() != m) throw std::invalid_argument("loglog_fit: se size mismatch");
        for (std::size_t i = 0; i < m; ++i) {
            if (ys[i] <= 0.0) throw std::invalid_argument("loglog_fit: y must be positive");
            const double rel = ses[i] / ys[i];
            w[i] = rel > 0.0 ? 1.0 / (rel * rel) : 0.0;
        }
        // all-zero ses degenerate to equal weights
        double wsum = 0.0;
        for (double v : w) wsum += v;
        if (wsum == 0.0) std::fill(w.begin(), w.end(), 1.0);
        else
            for (double& v : w)
                if (v == 0.0) {
                    // exact cells dominate: give them the largest finite weight
                    double wmax = 0.0;
                    for (double u : w) wmax = std::max(wmax, u);
                    v = wmax;
                }
    }

    double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (xs[i] <= 0.0 || ys[i] <= 0.0)
            throw std::invalid_argument("loglog_fit: data must be positive");
        const double lx = std::log(xs[i]);
        const double ly = std::log(ys[i]);
        sw += w[i];
        sx += w[i] * lx;
        sy += w[i] * ly;
        sxx += w[i] * lx * lx;
        sxy += w[i] * lx * ly;
    }
    const double det = sw * sxx - sx * sx;
    if (std::abs(det) < 1e-30) throw std::invalid_argument("loglog_fit: degenerate abscissa");

    SlopeFit f;
    f.slope = (sw * sxy - sx * sy) / det;
    f.intercept = (sxx * sy - sx * sxy) / det;

    // residual-scaled standard error of the slope
    double rss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double r = std::log(ys[i]) - (f.intercept + f.slope * std::log(xs[i]));
        rss += w[i] * r * r;
    }
    const double dof = std::max<double>(1.0, static_cast<double>(m) - 2.0);
    f.slope_se = std::sqrt(std::max(rss / dof, 1e-300) * sw / det);
    return f;
}

}  // namespace schlab
