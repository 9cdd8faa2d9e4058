// Tensor-product collocation grid on [0,pi]^d and the two field
// representations used throughout: point values at the cosine nodes
// x_j = pi*(j+1/2)/n, and coefficients in the orthonormal Neumann
// cosine basis phi_k(x) = prod_i c_{k_i} cos(k_i x_i).
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace schlab {

inline constexpr double kPi = 3.14159265358979323846;

struct GridSpec {
    int d = 1;       // spatial dimension, 1..3
    int n = 4;       // modes (= nodes) per axis
    double T = 1.0;  // time horizon
    int nt = 1;      // time steps

    void validate() const {
        if (d < 1 || d > 3) throw std::invalid_argument("GridSpec: d must be 1, 2 or 3");
        if (n < 4) throw std::invalid_argument("GridSpec: n must be >= 4");
        if (nt < 1) throw std::invalid_argument("GridSpec: nt must be >= 1");
        if (!(T > 0.0)) throw std::invalid_argument("GridSpec: T must be > 0");
    }

    std::size_t size() const {
        std::size_t s = 1;
        for (int i = 0; i < d; ++i) s *= static_cast<std::size_t>(n);
        return s;
    }
    double dt() const { return T / nt; }
    double node(int j) const { return kPi * (j + 0.5) / n; }
    double cell_volume() const {
        double w = 1.0;
        for (int i = 0; i < d; ++i) w *= kPi / n;
        return w;
    }

    bool same_space(const GridSpec& o) const { return d == o.d && n == o.n; }
    bool same_axes(const GridSpec& o) const {
        return same_space(o) && nt == o.nt && T == o.T;
    }
};

// Point values on the collocation grid, row-major over axes.
struct Field {
    GridSpec grid;
    std::vector<double> values;

    Field() = default;
    explicit Field(const GridSpec& g, double fill = 0.0)
        : grid(g), values(g.size(), fill) {}

    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }
    std::size_t size() const { return values.size(); }
};

// Coefficients against the orthonormal eigenfunctions, same index layout.
struct SpectralField {
    GridSpec grid;
    std::vector<double> coeffs;

    SpectralField() = default;
    explicit SpectralField(const GridSpec& g, double fill = 0.0)
        : grid(g), coeffs(g.size(), fill) {}

    double& operator[](std::size_t i) { return coeffs[i]; }
    double operator[](std::size_t i) const { return coeffs[i]; }
    std::size_t size() const { return coeffs.size(); }
};

// Decode flat index -> multi-index k (row-major, axis 0 slowest).
inline std::array<int, 3> unrank_mode(std::size_t idx, const GridSpec& g) {
    std::array<int, 3> k{0, 0, 0};
    for (int a = g.d - 1; a >= 0; --a) {
        k[static_cast<std::size_t>(a)] = static_cast<int>(idx % g.n);
        idx /= g.n;
    }
    return k;
}

// Basis normalization per axis: c_0 = 1/sqrt(pi), c_k = sqrt(2/pi).
inline double cosine_norm(int k) {
    return k == 0 ? 1.0 / std::sqrt(kPi) : std::sqrt(2.0 / kPi);
}

// phi_k(x) for an arbitrary point x (not necessarily a node).
inline double eigenfunction(const std::array<int, 3>& k, const double* x, int d) {
    double v = 1.0;
    for (int i = 0; i < d; ++i)
        v *= cosine_norm(k[static_cast<std::size_t>(i)]) *
             std::cos(k[static_cast<std::size_t>(i)] * x[i]);
    return v;
}

}  // namespace schlab
