// Problem data: the cubic drift f, the diffusion coefficient sigma
// drawn from a closed registry of bounded Lipschitz choices (each entry
// carries its certified bound and Lipschitz constant), the initial
// datum, and the deviation scale family h(eps).
//
// Validity conditions enforced at construction, referred to by label
// throughout the harness diagnostics:
//   H.1  sigma bounded and Lipschitz
//   H.2  f a cubic polynomial with positive leading coefficient
//   H.3  u0 continuous (and p-integrable, automatic on [0,pi]^d)
//   H.4  u0 gamma-Holder continuous, gamma in (0,1]
#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "schlab/grid.hpp"

namespace schlab {

struct Sigma {
    enum class Kind { constant, cosine, rational_bounded };

    Kind kind = Kind::constant;
    double param = 1.0;     // constant value, or amplitude for rational_bounded
    double bound = 1.0;     // certified M_sigma
    double lipschitz = 0.0; // certified L_sigma

    static Sigma constant(double c) { return {Kind::constant, c, std::abs(c), 0.0}; }
    static Sigma cosine() { return {Kind::cosine, 1.0, 1.0, 1.0}; }
    // c * u / (1 + u^2): bounded by c/2, Lipschitz constant c
    static Sigma rational_bounded(double c) {
        return {Kind::rational_bounded, c, std::abs(c) / 2.0, std::abs(c)};
    }

    double operator()(double u) const {
        switch (kind) {
            case Kind::constant: return param;
            case Kind::cosine: return std::cos(u);
            case Kind::rational_bounded: return param * u / (1.0 + u * u);
        }
        return param;
    }
    std::string name() const {
        switch (kind) {
            case Kind::constant: return "constant";
            case Kind::cosine: return "cosine";
            case Kind::rational_bounded: return "rational_bounded";
        }
        return "constant";
    }
};

struct InitialDatum {
    enum class Kind { single_mode, smooth_bump, zero };

    Kind kind = Kind::single_mode;
    int k = 1;
    double amp = 1.0;

    Field realize(const GridSpec& g) const;
    std::string name() const {
        switch (kind) {
            case Kind::single_mode: return "single_mode";
            case Kind::smooth_bump: return "smooth_bump";
            case Kind::zero: return "zero";
        }
        return "zero";
    }
};

struct ModelSpec {
    GridSpec grid;
    std::array<double, 4> f_coeffs{1.0, 0.0, -1.0, 0.0};  // a3, a2, a1, a0
    Sigma sigma = Sigma::constant(1.0);
    InitialDatum u0{};
    double gamma = 1.0;

    // Validating factory; rejects H.2 / H.4 violations.
    static ModelSpec make(const GridSpec& grid, std::array<double, 4> f_coeffs,
                          Sigma sigma, InitialDatum u0, double gamma);
    // Bypass for degenerate test models (f linear or zero, sigma zero).
    static ModelSpec unchecked(const GridSpec& grid, std::array<double, 4> f_coeffs,
                               Sigma sigma, InitialDatum u0, double gamma);

    // Default double-well setup: f(u) = u^3 - u, sigma = 1, u0 = cos(x1).
    static ModelSpec default_model(const GridSpec& grid);

    double f_scalar(double u) const {
        return ((f_coeffs[0] * u + f_coeffs[1]) * u + f_coeffs[2]) * u + f_coeffs[3];
    }
    double f_prime_scalar(double u) const {
        return (3.0 * f_coeffs[0] * u + 2.0 * f_coeffs[1]) * u + f_coeffs[2];
    }
    double f_second_scalar(double u) const {
        return 6.0 * f_coeffs[0] * u + 2.0 * f_coeffs[1];
    }
};

Field f_eval(const Field& u, const ModelSpec& m);
Field f_prime(const Field& u, const ModelSpec& m);
Field f_second(const Field& u, const ModelSpec& m);
Field sigma_eval(const Field& u, const ModelSpec& m);

struct ScalingSpec {
    enum class HKind { one, inv_sqrt, power, log_family };

    std::vector<double> eps_list;
    HKind kind = HKind::one;
    double theta = 0.25;  // exponent for power family, in (0, 1/2)

    static ScalingSpec clt(std::vector<double> eps);
    static ScalingSpec ldp(std::vector<double> eps);
    static ScalingSpec power(std::vector<double> eps, double theta);
    static ScalingSpec log_family(std::vector<double> eps);

    double h(double eps) const;
    std::string h_name() const;
    void validate() const;
};

}  // namespace schlab
