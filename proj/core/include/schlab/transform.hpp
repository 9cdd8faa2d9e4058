// Orthogonal cosine transform between point values and eigenbasis
// coefficients. Collocation at the half-integer nodes makes the
// forward/inverse pair an exact inverse and Parseval exact with the
// uniform quadrature weight (pi/n)^d.
#pragma once

#include <memory>
#include <vector>

#include "schlab/grid.hpp"

namespace schlab {

// Per-axis dense transform matrices for one resolution n.
// Direct O(n^2) per axis; adequate at desk scale (n <= 128).
class CosineTransform {
  public:
    explicit CosineTransform(int n);

    int n() const { return n_; }

    // In-place d-dimensional transforms on a flat row-major array.
    void forward(std::vector<double>& data, int d) const;   // values -> coeffs
    void inverse(std::vector<double>& data, int d) const;   // coeffs -> values

    // Shared per-resolution instance (thread-safe construction).
    static std::shared_ptr<const CosineTransform> cached(int n);

  private:
    void apply_axis(std::vector<double>& data, int d, int axis,
                    const std::vector<double>& m) const;

    int n_;
    std::vector<double> fwd_;  // fwd[k*n+j] = (pi/n) c_k cos(k x_j)
    std::vector<double> inv_;  // inv[j*n+k] =        c_k cos(k x_j)
};

SpectralField to_spectral(const Field& f);
Field to_physical(const SpectralField& c);

void to_spectral(const Field& f, SpectralField& out);
void to_physical(const SpectralField& c, Field& out);

}  // namespace schlab
