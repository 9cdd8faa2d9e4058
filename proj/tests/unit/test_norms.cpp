#include <cmath>

#include "doctest.h"
#include "schlab/norms.hpp"
#include "schlab/rng.hpp"

using namespace schlab;

namespace {

Trajectory linear_in_time(const GridSpec& g) {
    // f(t, .) = t * 1
    Trajectory tr(g);
    for (int k = 0; k <= g.nt; ++k) {
        const double t = k * g.dt();
        tr.times.push_back(t);
        tr.frames.emplace_back(g, t);
    }
    return tr;
}

}  // namespace

TEST_CASE("lp_norm closed forms") {
    GridSpec g1{1, 16, 1.0, 1};
    Field one(g1, 1.0);
    for (double p : {1.0, 2.0, 4.0})
        CHECK(lp_norm(one, p) == doctest::Approx(std::pow(kPi, 1.0 / p)).epsilon(1e-12));

    GridSpec g2{2, 8, 1.0, 1};
    Field two(g2, 2.0);
    CHECK(lp_norm(two, 2.0) == doctest::Approx(2.0 * kPi).epsilon(1e-12));

    Field cosx(g1);
    for (int j = 0; j < g1.n; ++j) cosx[static_cast<std::size_t>(j)] = std::cos(g1.node(j));
    CHECK(lp_norm(cosx, 2.0) == doctest::Approx(std::sqrt(kPi / 2.0)).epsilon(1e-6));
}

TEST_CASE("lp_norm is absolutely homogeneous") {
    GridSpec g{2, 6, 1.0, 1};
    GaussianStream gs(7);
    Field f(g);
    for (auto& v : f.values) v = gs.next();
    for (double lam : {-3.5, 0.25, 2.0}) {
        Field sf = f;
        for (auto& v : sf.values) v *= lam;
        for (double p : {1.0, 2.0, 3.0})
            CHECK(lp_norm(sf, p) == doctest::Approx(std::abs(lam) * lp_norm(f, p)).epsilon(1e-12));
    }
}

TEST_CASE("holder_norm closed forms") {
    GridSpec g{1, 8, 1.0, 4};

    // constant in time: the quotient part vanishes
    Trajectory c(g);
    for (int k = 0; k <= g.nt; ++k) {
        c.times.push_back(k * g.dt());
        c.frames.emplace_back(g, 1.0);
    }
    CHECK(holder_norm(c, {2.0, 2.0, 0.2}) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));

    // f(t) = t * 1 on T = 1: sup-part pi, quotient pi * T^{1/2}
    const Trajectory lin = linear_in_time(g);
    CHECK(holder_norm(lin, {1.0, 1.0, 0.5}) == doctest::Approx(2.0 * kPi).epsilon(1e-12));
}

TEST_CASE("two-step trajectory matches the direct evaluation") {
    GridSpec g{1, 8, 0.25, 1};
    GaussianStream gs(11);
    Field gfield(g);
    for (auto& v : gfield.values) v = gs.next();

    Trajectory tr(g);
    tr.times = {0.0, g.dt()};
    tr.frames.emplace_back(g, 0.0);
    tr.frames.push_back(gfield);

    const NormSpec ns{2.0, 2.0, 0.3};
    const double gn = lp_norm(gfield, 2.0);
    CHECK(holder_norm(tr, ns) ==
          doctest::Approx(gn * (1.0 + std::pow(g.dt(), -ns.alpha))).epsilon(1e-12));
}

TEST_CASE("continuity modulus: closed forms and monotonicity") {
    GridSpec g{1, 8, 1.0, 10};
    Trajectory c(g);
    for (int k = 0; k <= g.nt; ++k) {
        c.times.push_back(k * g.dt());
        c.frames.emplace_back(g, 3.0);
    }
    CHECK(continuity_modulus(c, {2.0, 2.0, 0.5}, 0.35) == 0.0);

    const Trajectory lin = linear_in_time(g);
    const NormSpec ns{1.0, 1.0, 0.5};
    // largest admissible gap below delta dominates: gap^{1-alpha} * pi
    const double delta = 0.35;
    CHECK(continuity_modulus(lin, ns, delta) ==
          doctest::Approx(std::pow(0.3, 0.5) * kPi).epsilon(1e-12));

    // random trajectory: modulus grows with delta
    GaussianStream gs(5);
    Trajectory r(g);
    for (int k = 0; k <= g.nt; ++k) {
        r.times.push_back(k * g.dt());
        Field f(g);
        for (auto& v : f.values) v = gs.next();
        r.frames.push_back(std::move(f));
    }
    double prev = 0.0;
    for (double delta2 : {0.15, 0.35, 0.65, 1.01}) {
        const double m = continuity_modulus(r, {2.0, 2.0, 0.4}, delta2);
        CHECK(m >= prev);
        prev = m;
    }

    // holder norm dominates the sup part
    CHECK(holder_norm(r, {2.0, 2.0, 0.4}) >= sup_lp(r, 2.0));
}

TEST_CASE("NormSpec validation") {
    CHECK_THROWS_AS((NormSpec{0.5, 2.0, 0.2}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((NormSpec{2.0, 1.0, 0.2}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((NormSpec{2.0, 2.0, 1.0}.validate()), std::invalid_argument);
    // d = 1, gamma = 1: alpha must stay below 3/8
    CHECK_THROWS_AS((NormSpec{2.0, 2.0, 0.4}.validate_holder_band(1, 1.0)), std::invalid_argument);
    CHECK_NOTHROW((NormSpec{2.0, 2.0, 0.2}.validate_holder_band(1, 1.0)));
}
