// L^p norms by collocation quadrature and the discrete surrogate of the
// path Holder norm sup_t ||f(t)||_p + sup_{s<t} ||f(t)-f(s)||_p / |t-s|^a.
// The sup over s != t is taken over grid-time pairs; no finer
// interpolation is attempted.
#pragma once

#include "schlab/grid.hpp"
#include "schlab/trajectory.hpp"

namespace schlab {

struct NormSpec {
    double p = 2.0;      // spatial exponent, >= 1
    double q = 2.0;      // moment exponent, >= p
    double alpha = 0.2;  // temporal Holder exponent in (0,1)

    void validate() const {
        if (p < 1.0) throw std::invalid_argument("NormSpec: p must be >= 1");
        if (q < p) throw std::invalid_argument("NormSpec: q must be >= p");
        if (!(alpha > 0.0 && alpha < 1.0))
            throw std::invalid_argument("NormSpec: alpha must lie in (0,1)");
    }
    // band required when a Holder study is requested
    void validate_holder_band(int d, double gamma) const {
        validate();
        const double cap = 0.5 * (1.0 - d / 4.0);
        if (alpha > gamma / 4.0 + 1e-12)
            throw std::invalid_argument("NormSpec: alpha exceeds gamma/4");
        if (alpha >= cap)
            throw std::invalid_argument("NormSpec: alpha must be < (1 - d/4)/2");
    }
};

double lp_norm(const Field& f, double p);
double lp_diff_norm(const Field& a, const Field& b, double p);

double sup_lp(const Trajectory& tr, double p);

// sup_t ||f(t)||_p + sup over distinct grid-time pairs of the Holder quotient
double holder_norm(const Trajectory& tr, const NormSpec& ns);

// sup over pairs with |t-s| < delta of ||f(t)-f(s)||_p / |t-s|^alpha
double continuity_modulus(const Trajectory& tr, const NormSpec& ns, double delta);

}  // namespace schlab
