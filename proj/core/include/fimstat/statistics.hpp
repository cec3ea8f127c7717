#pragma once

#include <cstddef>
#include <span>

namespace fimstat {

/// Sample summary of an ensemble: mean, unbiased standard deviation and
/// standard error of the mean.
struct Summary {
    std::size_t count = 0;
    double mean = 0.0;
    double stddev = 0.0;
    double stderr_mean = 0.0;

    /// |mean - target| <= k * stderr_mean.
    bool within(double target, double k) const noexcept;
    /// (mean - target) / stderr_mean; 0 when both are equal.
    double z_score(double target) const noexcept;
};

Summary summarize(std::span<const double> values);

/// Ordinary least-squares slope and intercept of y on x.
struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
};

LinearFit least_squares(std::span<const double> x, std::span<const double> y);

}  // namespace fimstat
