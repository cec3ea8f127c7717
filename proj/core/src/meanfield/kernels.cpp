#include "fimstat/meanfield/kernels.hpp"

#include "fimstat/errors.hpp"
#include "fimstat/meanfield/gaussian_quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace fimstat::meanfield {

namespace {

constexpr double kCorrelationCap = 1.0 - 1e-12;
constexpr double kPi = std::numbers::pi;

struct Pair {
    double a;
    double c;          // clamped correlation coefficient
    bool diagonal;     // b == a: integrate E[f(X)^2] directly
};

Pair check_domain(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("Gaussian kernel arguments must be finite");
    if (a < 0.0) throw DomainError("Gaussian kernel variance a must be >= 0");
    if (std::abs(b) > a * (1.0 + 1e-12))
        throw DomainError("Gaussian kernel needs |b| <= a (correlation coefficient outside [-1, 1])");
    if (a == 0.0) return {0.0, 0.0, true};
    const double c = b / a;
    if (c >= 1.0) return {a, 1.0, true};
    return {a, std::clamp(c, -1.0, kCorrelationCap), false};
}

// ---- closed forms -------------------------------------------------------

double erf_kernel(double a, double c) {
    const double b = c * a;
    const double d = (1.0 + 2.0 * a) * (1.0 + 2.0 * a) - 4.0 * b * b;
    return 2.0 / kPi * std::atan(2.0 * b / std::sqrt(d));
}

double erf_prime_kernel(double a, double c) {
    const double b = c * a;
    const double d = (1.0 + 2.0 * a) * (1.0 + 2.0 * a) - 4.0 * b * b;
    return 4.0 / (kPi * std::sqrt(d));
}

double relu_kernel(double a, double c) {
    return a / (2.0 * kPi) * (std::sqrt(1.0 - c * c) + c * kPi / 2.0 + c * std::asin(c));
}

double relu_prime_kernel(double c) { return (kPi / 2.0 + std::asin(c)) / (2.0 * kPi); }

double analytic(const Activation& act, const Pair& p, bool derivative) {
    switch (act.kind()) {
        case ActivationKind::erf:
            return derivative ? erf_prime_kernel(p.a, p.c) : erf_kernel(p.a, p.c);
        case ActivationKind::relu:
            return derivative ? relu_prime_kernel(p.c) : relu_kernel(p.a, p.c);
        case ActivationKind::linear:
            return derivative ? 1.0 : p.c * p.a;
        default:
            throw DomainError("no closed-form Gaussian kernel for activation '" + act.name() + "'");
    }
}

// ---- quadrature ---------------------------------------------------------

template <class F>
double quadrature(const Activation& act, const Pair& p, F f) {
    const double root_a = std::sqrt(p.a);
    const auto kinks = act.kinks();
    QuadratureOptions outer;
    outer.abs_tol = 1e-12 * (1.0 + p.a);

    std::vector<double> outer_cuts;
    for (double k : kinks) {
        outer_cuts.push_back(k / root_a);
        if (p.c != 0.0) outer_cuts.push_back(k / (root_a * p.c));
    }

    if (p.diagonal) {
        return gaussian_expectation([&](double z) { const double v = f(root_a * z); return v * v; },
                                    outer_cuts, outer);
    }
    if (p.c == -1.0) {
        return gaussian_expectation([&](double z) { return f(root_a * z) * f(-root_a * z); }, outer_cuts, outer);
    }

    const double s = std::sqrt(1.0 - p.c * p.c);
    QuadratureOptions inner;
    inner.abs_tol = 1e-13 * (1.0 + p.a);
    std::vector<double> inner_cuts(kinks.size());
    auto conditional_mean = [&](double z1) {
        for (std::size_t i = 0; i < kinks.size(); ++i) inner_cuts[i] = (kinks[i] / root_a - p.c * z1) / s;
        return gaussian_expectation([&](double z2) { return f(root_a * (p.c * z1 + s * z2)); }, inner_cuts, inner);
    };
    return gaussian_expectation([&](double z1) { return f(root_a * z1) * conditional_mean(z1); }, outer_cuts, outer);
}

double evaluate(const Activation& act, double a, double b, KernelMethod method, bool derivative) {
    const Pair p = check_domain(a, b);
    if (p.a == 0.0) {
        const double v = derivative ? act.derivative(0.0) : act.value(0.0);
        return v * v;
    }
    const bool use_closed =
        method == KernelMethod::analytic || (method == KernelMethod::automatic && act.has_closed_form());
    if (use_closed) return analytic(act, p, derivative);
    if (derivative) return quadrature(act, p, [&](double x) { return act.derivative(x); });
    return quadrature(act, p, [&](double x) { return act.value(x); });
}

}  // namespace

double kernel_I_phi(const Activation& act, double a, double b, KernelMethod method) {
    return evaluate(act, a, b, method, false);
}

double kernel_I_phi_prime(const Activation& act, double a, double b, KernelMethod method) {
    return evaluate(act, a, b, method, true);
}

double gaussian_second_moment(const Activation& act, double q, KernelMethod method) {
    return evaluate(act, q, q, method, false);
}

double gaussian_derivative_second_moment(const Activation& act, double q, KernelMethod method) {
    return evaluate(act, q, q, method, true);
}

}  // namespace fimstat::meanfield
