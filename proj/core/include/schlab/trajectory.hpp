#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "schlab/grid.hpp"

namespace schlab {

// Time-indexed sequence of fields on a uniform time grid
// 0 = t_0 < ... < t_nt = T. Frames hold physical point values.
struct Trajectory {
    GridSpec grid;
    std::vector<double> times;
    std::vector<Field> frames;

    Trajectory() = default;
    explicit Trajectory(const GridSpec& g) : grid(g) {
        times.reserve(static_cast<std::size_t>(g.nt) + 1);
        frames.reserve(static_cast<std::size_t>(g.nt) + 1);
    }

    std::size_t steps() const { return times.empty() ? 0 : times.size() - 1; }
    double dt() const { return grid.dt(); }

    const Field& frame(std::size_t i) const { return frames[i]; }

    // nearest time index; throws if t is not (close to) a grid time
    std::size_t index_of(double t) const {
        const double dtv = grid.dt();
        const double pos = t / dtv;
        const auto i = static_cast<std::size_t>(pos + 0.5);
        if (i >= times.size() || std::abs(times[i] - t) > 1e-9 * (grid.T + 1.0))
            throw std::invalid_argument("Trajectory: time not on the grid");
        return i;
    }

    void check_axes(const Trajectory& o) const {
        if (!grid.same_axes(o.grid) || times.size() != o.times.size())
            throw std::invalid_argument("Trajectory: time/space axis mismatch");
    }
};

// A deterministic control v(t,x) together with its quadratic cost
// 1/2 * integral of v^2 over [0,T] x D, and an optional admissibility
// radius N (membership requires 2*cost <= N).
struct Control {
    Trajectory trajectory;
    double l2_cost = 0.0;
    std::optional<double> bound_N;

    void check_admissible() const {
        if (bound_N && 2.0 * l2_cost > *bound_N + 1e-12)
            throw std::invalid_argument("Control: energy exceeds admissibility radius N");
    }
};

}  // namespace schlab
