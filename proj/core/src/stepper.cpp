#include "schlab/stepper.hpp"

#include <cmath>

#include "schlab/green.hpp"

namespace schlab {

Stepper::Stepper(const GridSpec& grid, const ModelSpec& model)
    : grid_(grid), model_(model), dt_(grid.dt()), tr_(CosineTransform::cached(grid.n)), phys_(grid) {
    const EigenTable eig(grid);
    const std::size_t m = grid.size();
    decay_.resize(m);
    psi_.resize(m);
    gam_.resize(m);
    lap_ = eig.lap;
    for (std::size_t i = 0; i < m; ++i) {
        const double lam = eig.lambda[i];
        decay_[i] = std::exp(-lam * dt_);
        if (lam > 0.0) {
            psi_[i] = (1.0 - decay_[i]) / lam;
            gam_[i] = std::sqrt((1.0 - std::exp(-2.0 * lam * dt_)) / (2.0 * lam * dt_));
        } else {
            psi_[i] = dt_;
            gam_[i] = 1.0;
        }
    }
    work_.resize(m);
    work2_.resize(m);
}

void Stepper::to_phys(const SpectralField& hat) {
    phys_.values = hat.coeffs;
    tr_->inverse(phys_.values, grid_.d);
    check_finite(phys_.values);
}

void Stepper::check_finite(const std::vector<double>& values) const {
    for (double v : values) {
        if (!std::isfinite(v) || std::abs(v) > kBlowupThreshold)
            throw BlowupError(step_index_, step_index_ * dt_);
    }
}

void Stepper::forward_into(std::vector<double>& buf) const {
    tr_->forward(buf, grid_.d);
}

void Stepper::deterministic(SpectralField& uhat) {
    to_phys(uhat);
    for (std::size_t i = 0; i < work_.size(); ++i) work_[i] = model_.f_scalar(phys_[i]);
    forward_into(work_);
    for (std::size_t i = 0; i < uhat.size(); ++i)
        uhat[i] = decay_[i] * uhat[i] - psi_[i] * lap_[i] * work_[i];
}

void Stepper::stochastic(SpectralField& uhat, const double* dW, double sqrt_eps) {
    to_phys(uhat);
    for (std::size_t i = 0; i < work_.size(); ++i) work_[i] = model_.f_scalar(phys_[i]);
    forward_into(work_);

    work2_.assign(dW, dW + uhat.size());
    tr_->inverse(work2_, grid_.d);  // physical white-noise increment
    for (std::size_t i = 0; i < work2_.size(); ++i)
        work2_[i] = sqrt_eps * model_.sigma(phys_[i]) * work2_[i];
    forward_into(work2_);

    for (std::size_t i = 0; i < uhat.size(); ++i)
        uhat[i] = decay_[i] * uhat[i] - psi_[i] * lap_[i] * work_[i] + gam_[i] * work2_[i];
}

void Stepper::fluctuation(SpectralField& yhat, const Field& u0_frame, const double* dW) {
    to_phys(yhat);
    for (std::size_t i = 0; i < work_.size(); ++i)
        work_[i] = model_.f_prime_scalar(u0_frame[i]) * phys_[i];
    forward_into(work_);

    work2_.assign(dW, dW + yhat.size());
    tr_->inverse(work2_, grid_.d);
    for (std::size_t i = 0; i < work2_.size(); ++i)
        work2_[i] = model_.sigma(u0_frame[i]) * work2_[i];
    forward_into(work2_);

    for (std::size_t i = 0; i < yhat.size(); ++i)
        yhat[i] = decay_[i] * yhat[i] - psi_[i] * lap_[i] * work_[i] + gam_[i] * work2_[i];
}

void Stepper::skeleton(SpectralField& zhat, const Field& u0_frame, const Field& v_frame) {
    to_phys(zhat);
    for (std::size_t i = 0; i < work_.size(); ++i)
        work_[i] = model_.f_prime_scalar(u0_frame[i]) * phys_[i];
    forward_into(work_);

    for (std::size_t i = 0; i < work2_.size(); ++i)
        work2_[i] = model_.sigma(u0_frame[i]) * v_frame[i];
    forward_into(work2_);

    for (std::size_t i = 0; i < zhat.size(); ++i)
        zhat[i] = decay_[i] * zhat[i] - psi_[i] * lap_[i] * work_[i] + psi_[i] * work2_[i];
}

void Stepper::controlled(SpectralField& zhat, const Field& u0_frame, const Field* v_frame,
                         const double* dW, double eps, double h) {
    to_phys(zhat);
    const double scale = std::sqrt(eps) * h;
    // difference quotient of the drift at the perturbed state
    for (std::size_t i = 0; i < work_.size(); ++i) {
        const double u0v = u0_frame[i];
        work_[i] = (model_.f_scalar(u0v + scale * phys_[i]) - model_.f_scalar(u0v)) / scale;
    }
    forward_into(work_);
    for (std::size_t i = 0; i < zhat.size(); ++i)
        zhat[i] = decay_[i] * zhat[i] - psi_[i] * lap_[i] * work_[i];

    if (v_frame) {
        for (std::size_t i = 0; i < work2_.size(); ++i)
            work2_[i] = model_.sigma(u0_frame[i] + scale * phys_[i]) * (*v_frame)[i];
        forward_into(work2_);
        for (std::size_t i = 0; i < zhat.size(); ++i) zhat[i] += psi_[i] * work2_[i];
    }
    if (dW) {
        work2_.assign(dW, dW + zhat.size());
        tr_->inverse(work2_, grid_.d);
        for (std::size_t i = 0; i < work2_.size(); ++i)
            work2_[i] = model_.sigma(u0_frame[i] + scale * phys_[i]) * work2_[i] / h;
        forward_into(work2_);
        for (std::size_t i = 0; i < zhat.size(); ++i) zhat[i] += gam_[i] * work2_[i];
    }
}

}  // namespace schlab
