// Small estimator toolbox: sample moments with standard errors and the
// weighted log-log regression every exponent fit goes through. Slopes
// are asserted through their confidence intervals, never as bare
// point estimates.
#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace schlab {

struct MeanEstimate {
    double mean = 0.0;
    double se = 0.0;  // standard error of the mean
    int count = 0;
};

MeanEstimate mean_with_se(const std::vector<double>& xs);

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_se = 0.0;

    double lo(double z = 2.0) const { return slope - z * slope_se; }
    double hi(double z = 2.0) const { return slope + z * slope_se; }
};

// Weighted least squares of log(y) on log(x). Weights are the inverse
// squared relative standard errors (se/y); zero ses give equal weights.
SlopeFit loglog_fit(const std::vector<double>& xs, const std::vector<double>& ys,
                    const std::vector<double>& ses = {});

double sample_variance(const std::vector<double>& xs);

double quantile(std::vector<double> xs, double q);

}  // namespace schlab
