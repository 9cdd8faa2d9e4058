#include "schlab/model.hpp"

#include <stdexcept>

namespace schlab {

Field InitialDatum::realize(const GridSpec& g) const {
    Field out(g, 0.0);
    if (kind == Kind::zero) return out;
    const std::size_t m = g.size();
    for (std::size_t i = 0; i < m; ++i) {
        const auto idx = unrank_mode(i, g);
        std::array<double, 3> x{0.0, 0.0, 0.0};
        for (int a = 0; a < g.d; ++a) x[static_cast<std::size_t>(a)] = g.node(idx[static_cast<std::size_t>(a)]);
        if (kind == Kind::single_mode) {
            out[i] = amp * std::cos(k * x[0]);
        } else {  // smooth_bump, width 0.5 around the domain center
            double v = amp;
            for (int a = 0; a < g.d; ++a) {
                const double r = (x[static_cast<std::size_t>(a)] - kPi / 2.0) / 0.5;
                v *= std::exp(-r * r);
            }
            out[i] = v;
        }
    }
    return out;
}

ModelSpec ModelSpec::make(const GridSpec& grid, std::array<double, 4> f_coeffs,
                          Sigma sigma, InitialDatum u0, double gamma) {
    grid.validate();
    if (!(f_coeffs[0] > 0.0))
        throw std::invalid_argument(
            "ModelSpec: H.2 requires a cubic drift with positive leading coefficient (a3 > 0)");
    if (!(gamma > 0.0 && gamma <= 1.0))
        throw std::invalid_argument("ModelSpec: H.4 requires gamma in (0, 1]");
    return unchecked(grid, f_coeffs, sigma, u0, gamma);
}

ModelSpec ModelSpec::unchecked(const GridSpec& grid, std::array<double, 4> f_coeffs,
                               Sigma sigma, InitialDatum u0, double gamma) {
    ModelSpec m;
    m.grid = grid;
    m.f_coeffs = f_coeffs;
    m.sigma = sigma;
    m.u0 = u0;
    m.gamma = gamma;
    return m;
}

ModelSpec ModelSpec::default_model(const GridSpec& grid) {
    return make(grid, {1.0, 0.0, -1.0, 0.0}, Sigma::constant(1.0),
                InitialDatum{InitialDatum::Kind::single_mode, 1, 1.0}, 1.0);
}

namespace {
template <typename F>
Field map_field(const Field& u, F&& fn) {
    Field out(u.grid);
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = fn(u[i]);
    return out;
}
}  // namespace

Field f_eval(const Field& u, const ModelSpec& m) {
    return map_field(u, [&](double v) { return m.f_scalar(v); });
}
Field f_prime(const Field& u, const ModelSpec& m) {
    return map_field(u, [&](double v) { return m.f_prime_scalar(v); });
}
Field f_second(const Field& u, const ModelSpec& m) {
    return map_field(u, [&](double v) { return m.f_second_scalar(v); });
}
Field sigma_eval(const Field& u, const ModelSpec& m) {
    return map_field(u, [&](double v) { return m.sigma(v); });
}

ScalingSpec ScalingSpec::clt(std::vector<double> eps) {
    ScalingSpec s;
    s.eps_list = std::move(eps);
    s.kind = HKind::one;
    s.validate();
    return s;
}
ScalingSpec ScalingSpec::ldp(std::vector<double> eps) {
    ScalingSpec s;
    s.eps_list = std::move(eps);
    s.kind = HKind::inv_sqrt;
    s.validate();
    return s;
}
ScalingSpec ScalingSpec::power(std::vector<double> eps, double theta) {
    ScalingSpec s;
    s.eps_list = std::move(eps);
    s.kind = HKind::power;
    s.theta = theta;
    s.validate();
    return s;
}
ScalingSpec ScalingSpec::log_family(std::vector<double> eps) {
    ScalingSpec s;
    s.eps_list = std::move(eps);
    s.kind = HKind::log_family;
    s.validate();
    return s;
}

double ScalingSpec::h(double eps) const {
    switch (kind) {
        case HKind::one: return 1.0;
        case HKind::inv_sqrt: return 1.0 / std::sqrt(eps);
        case HKind::power: return std::pow(eps, -theta);
        case HKind::log_family: return std::sqrt(std::log(1.0 / eps));
    }
    return 1.0;
}

std::string ScalingSpec::h_name() const {
    switch (kind) {
        case HKind::one: return "one";
        case HKind::inv_sqrt: return "inv_sqrt";
        case HKind::power: return "power";
        case HKind::log_family: return "log";
    }
    return "one";
}

void ScalingSpec::validate() const {
    for (double e : eps_list)
        if (!(e > 0.0 && e <= 1.0))
            throw std::invalid_argument("ScalingSpec: eps values must lie in (0, 1]");
    if (kind == HKind::power && !(theta > 0.0 && theta < 0.5))
        throw std::invalid_argument(
            "ScalingSpec: power family requires theta in (0, 1/2) so that "
            "h(eps) -> infinity and sqrt(eps) h(eps) -> 0");
    if (kind == HKind::log_family)
        for (double e : eps_list)
            if (e >= 1.0)
                throw std::invalid_argument("ScalingSpec: log family needs eps < 1");
}

}  // namespace schlab
