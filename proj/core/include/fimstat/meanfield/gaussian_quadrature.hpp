#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

namespace fimstat::meanfield {

/// Controls for the adaptive Gauss-Kronrod rules below.
struct QuadratureOptions {
    double abs_tol = 1e-13;    // absolute error target for the whole integral
    double half_width = 10.0;  // integrate the standard normal over [-R, R]
    int max_depth = 20;        // bisection levels per segment
};

namespace detail {

using Kronrod61 = boost::math::quadrature::gauss_kronrod<double, 61>;

template <class F>
double adaptive_segment(F& f, double lo, double hi, double abs_tol, int depth) {
    double err = 0.0;
    const double value = Kronrod61::integrate(f, lo, hi, 0, 0.0, &err);
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::abs(value);
    if (err <= std::max(abs_tol, floor) || depth <= 0) return value;
    const double mid = 0.5 * (lo + hi);
    return adaptive_segment(f, lo, mid, 0.5 * abs_tol, depth - 1) +
           adaptive_segment(f, mid, hi, 0.5 * abs_tol, depth - 1);
}

}  // namespace detail

/// Integral of f over [lo, hi], split at the given breakpoints.
template <class F>
double integrate_piecewise(F&& f, double lo, double hi, std::span<const double> breakpoints,
                           double abs_tol, int max_depth = 20) {
    std::vector<double> cuts{lo};
    for (double b : breakpoints)
        if (std::isfinite(b) && b > lo && b < hi) cuts.push_back(b);
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    double total = 0.0;
    const double span_len = hi - lo;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double share = abs_tol * (cuts[i + 1] - cuts[i]) / span_len;
        total += detail::adaptive_segment(f, cuts[i], cuts[i + 1], share, max_depth);
    }
    return total;
}

/// E[g(u)] for u ~ N(0, 1); `breakpoints` are points where g is not smooth.
template <class G>
double gaussian_expectation(G&& g, std::span<const double> breakpoints = {}, const QuadratureOptions& opt = {}) {
    constexpr double norm = 0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2;  // 1/sqrt(2 pi)
    auto integrand = [&](double u) { return g(u) * std::exp(-0.5 * u * u) * norm; };
    return integrate_piecewise(integrand, -opt.half_width, opt.half_width, breakpoints, opt.abs_tol,
                               opt.max_depth);
}

}  // namespace fimstat::meanfield
