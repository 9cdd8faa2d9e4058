#include "schlab/transform.hpp"

#include <map>
#include <mutex>

namespace schlab {

CosineTransform::CosineTransform(int n) : n_(n) {
    fwd_.resize(static_cast<std::size_t>(n) * n);
    inv_.resize(static_cast<std::size_t>(n) * n);
    const double w = kPi / n;
    for (int k = 0; k < n; ++k) {
        const double ck = cosine_norm(k);
        for (int j = 0; j < n; ++j) {
            const double b = std::cos(k * kPi * (j + 0.5) / n);
            fwd_[static_cast<std::size_t>(k) * n + j] = w * ck * b;
            inv_[static_cast<std::size_t>(j) * n + k] = ck * b;
        }
    }
}

void CosineTransform::apply_axis(std::vector<double>& data, int d, int axis,
                                 const std::vector<double>& m) const {
    const std::size_t n = static_cast<std::size_t>(n_);
    if (d == 1) {
        // single mat-vec
        static thread_local std::vector<double> out;
        out.assign(n, 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            const double* row = &m[k * n];
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) acc += row[j] * data[j];
            out[k] = acc;
        }
        data.swap(out);
        return;
    }

    // stride of `axis` in row-major layout, axis 0 slowest
    std::size_t stride = 1;
    for (int a = d - 1; a > axis; --a) stride *= n;
    const std::size_t outer = data.size() / (stride * n);

    static thread_local std::vector<double> fib_in, fib_out;
    fib_in.resize(n);
    fib_out.resize(n);
    for (std::size_t o = 0; o < outer; ++o) {
        const std::size_t base0 = o * stride * n;
        for (std::size_t in = 0; in < stride; ++in) {
            const std::size_t base = base0 + in;
            for (std::size_t t = 0; t < n; ++t) fib_in[t] = data[base + t * stride];
            for (std::size_t k = 0; k < n; ++k) {
                const double* row = &m[k * n];
                double acc = 0.0;
                for (std::size_t j = 0; j < n; ++j) acc += row[j] * fib_in[j];
                fib_out[k] = acc;
            }
            for (std::size_t t = 0; t < n; ++t) data[base + t * stride] = fib_out[t];
        }
    }
}

void CosineTransform::forward(std::vector<double>& data, int d) const {
    for (int a = 0; a < d; ++a) apply_axis(data, d, a, fwd_);
}

void CosineTransform::inverse(std::vector<double>& data, int d) const {
    // inv_ is stored j-major; reuse apply_axis by treating rows as outputs
    for (int a = 0; a < d; ++a) apply_axis(data, d, a, inv_);
}

std::shared_ptr<const CosineTransform> CosineTransform::cached(int n) {
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const CosineTransform>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    auto t = std::make_shared<const CosineTransform>(n);
    cache.emplace(n, t);
    return t;
}

SpectralField to_spectral(const Field& f) {
    SpectralField out;
    to_spectral(f, out);
    return out;
}

void to_spectral(const Field& f, SpectralField& out) {
    out.grid = f.grid;
    out.coeffs = f.values;
    CosineTransform::cached(f.grid.n)->forward(out.coeffs, f.grid.d);
}

Field to_physical(const SpectralField& c) {
    Field out;
    to_physical(c, out);
    return out;
}

void to_physical(const SpectralField& c, Field& out) {
    out.grid = c.grid;
    out.values = c.coeffs;
    CosineTransform::cached(c.grid.n)->inverse(out.values, c.grid.d);
}

}  // namespace schlab
