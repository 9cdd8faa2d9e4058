#include <cmath>

#include "doctest.h"
#include "schlab/grid.hpp"
#include "schlab/norms.hpp"
#include "schlab/rng.hpp"
#include "schlab/transform.hpp"

using namespace schlab;

namespace {

Field random_field(const GridSpec& g, std::uint64_t seed) {
    Field f(g);
    GaussianStream gs(seed);
    for (auto& v : f.values) v = gs.next();
    return f;
}

// dense oracle: coefficients by direct summation against phi_k(x_j),
// independent of the per-axis transform path
SpectralField dense_to_spectral(const Field& f) {
    const GridSpec& g = f.grid;
    SpectralField out(g, 0.0);
    const double w = g.cell_volume();
    for (std::size_t ki = 0; ki < out.size(); ++ki) {
        const auto k = unrank_mode(ki, g);
        double acc = 0.0;
        for (std::size_t ji = 0; ji < f.size(); ++ji) {
            const auto j = unrank_mode(ji, g);
            std::array<double, 3> x{0, 0, 0};
            for (int a = 0; a < g.d; ++a) x[static_cast<std::size_t>(a)] = g.node(j[static_cast<std::size_t>(a)]);
            acc += f[ji] * eigenfunction(k, x.data(), g.d);
        }
        out[ki] = acc * w;
    }
    return out;
}

}  // namespace

TEST_CASE("constant field has only the mean coefficient") {
    GridSpec g{1, 8, 1.0, 1};
    Field f(g, 1.0);
    const SpectralField c = to_spectral(f);
    CHECK(c[0] == doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));
    for (std::size_t i = 1; i < c.size(); ++i) CHECK(std::abs(c[i]) < 1e-12);
}

TEST_CASE("pure cosine mode lands on a single coefficient") {
    GridSpec g{1, 8, 1.0, 1};
    Field f(g);
    for (int j = 0; j < g.n; ++j) f[static_cast<std::size_t>(j)] = std::cos(2.0 * g.node(j));
    const SpectralField c = to_spectral(f);
    CHECK(c[2] == doctest::Approx(std::sqrt(kPi / 2.0)).epsilon(1e-12));
    for (std::size_t i = 0; i < c.size(); ++i)
        if (i != 2) CHECK(std::abs(c[i]) < 1e-12);
}

TEST_CASE("to_physical inverts the coefficient examples") {
    GridSpec g{1, 8, 1.0, 1};
    SpectralField c(g, 0.0);
    c[0] = std::sqrt(kPi);
    Field f = to_physical(c);
    for (double v : f.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

    SpectralField m1(g, 0.0);
    m1[1] = 1.0;
    f = to_physical(m1);
    for (int j = 0; j < g.n; ++j)
        CHECK(f[static_cast<std::size_t>(j)] ==
              doctest::Approx(std::sqrt(2.0 / kPi) * std::cos(g.node(j))).epsilon(1e-12));
}

TEST_CASE("transform agrees with the dense oracle and round-trips") {
    int idx = 0;
    for (const GridSpec& g : {GridSpec{1, 9, 1.0, 1}, GridSpec{2, 5, 1.0, 1}, GridSpec{3, 4, 1.0, 1}}) {
        const Field f = random_field(g, 1000 + static_cast<std::uint64_t>(idx++));
        const SpectralField fast = to_spectral(f);
        const SpectralField dense = dense_to_spectral(f);
        for (std::size_t i = 0; i < fast.size(); ++i)
            CHECK(fast[i] == doctest::Approx(dense[i]).epsilon(1e-10));

        const Field back = to_physical(fast);
        for (std::size_t i = 0; i < f.size(); ++i)
            CHECK(back[i] == doctest::Approx(f[i]).epsilon(1e-10));
    }
}

TEST_CASE("Parseval holds under the collocation quadrature") {
    for (int d = 1; d <= 3; ++d) {
        GridSpec g{d, d == 3 ? 4 : 8, 1.0, 1};
        const Field f = random_field(g, 42 + static_cast<std::uint64_t>(d));
        const SpectralField c = to_spectral(f);
        double sc = 0.0;
        for (double v : c.coeffs) sc += v * v;
        double sq = 0.0;
        for (double v : f.values) sq += v * v;
        sq *= g.cell_volume();
        CHECK(std::abs(sc - sq) <= 1e-10 * sq);
    }
}
