// One-step exponential Euler maps in the eigenbasis. The linear flow
// exp(-lambda_k dt) is exact; nonlinear terms are frozen at the step
// start and integrated with psi_k = (1 - exp(-lambda_k dt)) / lambda_k
// (psi_0 = dt). Noise increments enter with the one-step convolution
// standard deviation sqrt(q_k), q_k = (1 - exp(-2 lambda_k dt)) /
// (2 lambda_k), so the linear test equation reproduces the exact
// Ornstein-Uhlenbeck law at every grid time.
//
// All step maps share these tables; the fluctuation and controlled
// steps are the exact linearization/conjugation of the stochastic step,
// which is what makes coupled differences meaningful.
#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>

#include "schlab/grid.hpp"
#include "schlab/model.hpp"
#include "schlab/transform.hpp"

namespace schlab {

class BlowupError : public std::runtime_error {
  public:
    BlowupError(std::size_t step_index, double time)
        : std::runtime_error("solution blew up at step " + std::to_string(step_index) +
                             " (t = " + std::to_string(time) + ")"),
          step_index(step_index),
          time(time) {}
    std::size_t step_index;
    double time;
};

inline constexpr double kBlowupThreshold = 1e8;

class Stepper {
  public:
    Stepper(const GridSpec& grid, const ModelSpec& model);

    Stepper(const Stepper&) = delete;
    Stepper& operator=(const Stepper&) = delete;

    const GridSpec& grid() const { return grid_; }
    double dt() const { return dt_; }

    // u <- E u + psi (-|k|^2) F[f(u)]
    void deterministic(SpectralField& uhat);

    // deterministic step plus sqrt(eps)-scaled noise smoothed into the
    // step: u += sqrt(q_k/dt) F[sigma(u) dW]
    void stochastic(SpectralField& uhat, const double* dW, double sqrt_eps);

    // linearization around the deterministic frame (physical values):
    // y <- E y + psi (-|k|^2) F[f'(u0) y] + sqrt(q_k/dt) F[sigma(u0) dW]
    void fluctuation(SpectralField& yhat, const Field& u0_frame, const double* dW);

    // skeleton: z <- E z + psi (-|k|^2) F[f'(u0) z] + psi F[sigma(u0) v]
    void skeleton(SpectralField& zhat, const Field& u0_frame, const Field& v_frame);

    // controlled process at scale (eps, h); v_frame and dW may be null
    // (control off / noise off)
    void controlled(SpectralField& zhat, const Field& u0_frame, const Field* v_frame,
                    const double* dW, double eps, double h);

    // physical values of the current state (scratch result, valid until
    // the next call)
    const Field& last_physical() const { return phys_; }

    void set_step_index(std::size_t m) { step_index_ = m; }

  private:
    void to_phys(const SpectralField& hat);
    void check_finite(const std::vector<double>& values) const;
    void forward_into(std::vector<double>& buf) const;

    GridSpec grid_;
    ModelSpec model_;
    double dt_;
    std::shared_ptr<const CosineTransform> tr_;
    std::vector<double> decay_;  // exp(-lambda dt)
    std::vector<double> psi_;    // (1 - exp(-lambda dt)) / lambda
    std::vector<double> gam_;    // sqrt(q/dt)
    std::vector<double> lap_;    // |k|^2
    Field phys_;
    std::vector<double> work_;
    std::vector<double> work2_;
    std::size_t step_index_ = 0;
};

}  // namespace schlab
