#include "fimstat/statistics.hpp"

#include "fimstat/errors.hpp"

#include <cmath>
#include <limits>

namespace fimstat {

bool Summary::within(double target, double k) const noexcept {
    return std::abs(mean - target) <= k * stderr_mean;
}

double Summary::z_score(double target) const noexcept {
    const double diff = mean - target;
    if (diff == 0.0) return 0.0;
    if (stderr_mean == 0.0) return diff > 0 ? std::numeric_limits<double>::infinity()
                                            : -std::numeric_limits<double>::infinity();
    return diff / stderr_mean;
}

Summary summarize(std::span<const double> values) {
    Summary s;
    s.count = values.size();
    if (values.empty()) return s;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
        s.stderr_mean = s.stddev / std::sqrt(static_cast<double>(values.size()));
    }
    return s;
}

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw DomainError("least squares needs >= 2 paired points");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (sxx == 0.0) throw DomainError("least squares needs distinct x values");
    const double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

}  // namespace fimstat
