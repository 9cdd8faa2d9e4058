// Deterministic, platform-stable random streams. Replica seeds are
// derived from the master seed by mixing, never by wall clock, so a
// run is reproducible for any worker count.
#pragma once

#include <cmath>
#include <cstdint>

#include "schlab/grid.hpp"

namespace schlab {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Independent sub-stream seed for replica `index` of a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master ^ (0xD1B54A32D192ED03ULL * (index + 1));
    return splitmix64(s);
}

// Box-Muller standard normals over a splitmix64 stream.
class GaussianStream {
  public:
    explicit GaussianStream(std::uint64_t seed) : state_(seed) {}

    double next() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // uniforms in (0,1]; the +1 keeps log() away from 0
        const double u1 = ((splitmix64(state_) >> 11) + 1.0) * 0x1p-53;
        const double u2 = (splitmix64(state_) >> 11) * 0x1p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * kPi * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

  private:
    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace schlab
