#include "fimstat/meanfield/theory.hpp"

#include "fimstat/errors.hpp"

#include <algorithm>
#include <cmath>

namespace fimstat::meanfield {

namespace {

void require_backward(const MacroState& macro, const NetworkShape& shape) {
    if (macro.depth() != shape.depth() || !macro.has_backward())
        throw DomainError("theory needs a fully solved MacroState for this shape");
}

double kappa_sum(const NetworkShape& shape, const std::vector<double>& back, const std::vector<double>& fwd) {
    const double alpha = shape.alpha();
    double k = 0.0;
    for (int l = 1; l <= shape.depth(); ++l) {
        const auto i = static_cast<std::size_t>(l);
        k += shape.coefficient(l - 1) / alpha * back[i] * fwd[i - 1];
    }
    return k;
}

// (T-1)/T, with T = +inf giving 1.
double off_diagonal_share(double samples) { return std::isinf(samples) ? 1.0 : (samples - 1.0) / samples; }

}  // namespace

double kappa1(const NetworkShape& shape, const MacroState& macro) {
    require_backward(macro, shape);
    return kappa_sum(shape, macro.qtil, macro.qhat);
}

double kappa2(const NetworkShape& shape, const MacroState& macro) {
    require_backward(macro, shape);
    return kappa_sum(shape, macro.qtil_st, macro.qhat_st);
}

TheoryStats theory_stats(const NetworkShape& shape, const MacroState& macro, double samples, double momentum) {
    if (!(samples >= 1.0)) throw DomainError("sample count T must be >= 1");
    if (!(momentum >= 0.0 && momentum < 1.0)) throw DomainError("momentum must lie in [0, 1)");

    TheoryStats s;
    s.kappa1 = kappa1(shape, macro);
    s.kappa2 = kappa2(shape, macro);
    s.samples = samples;
    s.momentum = momentum;
    s.leading_order_reliable = s.kappa2 != 0.0;

    const double C = shape.outputs();
    const double M = shape.base_width;
    const double alpha = shape.alpha();
    const double off = off_diagonal_share(samples);
    const double diag = std::isinf(samples) ? 0.0 : 1.0 / samples;

    s.mean_eig = C * s.kappa1 / M;
    s.second_moment = C * alpha * (off * s.kappa2 * s.kappa2 + diag * s.kappa1 * s.kappa1);
    s.max_eig = alpha * (off * s.kappa2 + diag * s.kappa1) * M;

    const auto fr = fisher_rao_theory(shape, s.kappa1);
    s.fisher_rao_bound = fr.upper_bound;
    s.fisher_rao_uniform = fr.uniform_width_value;

    if (s.max_eig == 0.0)
        throw DomainError("lambda_max = 0: critical learning rate undefined (kappa2 = 0 with T = inf)");
    s.critical_lr = 2.0 * (1.0 + momentum) / s.max_eig;
    return s;
}

FisherRaoTheory fisher_rao_theory(const NetworkShape& shape, double kappa1) {
    const double sw = *std::max_element(shape.sigma_w2.begin(), shape.sigma_w2.end());
    const double C = shape.outputs();
    return {sw * shape.alpha() / shape.alpha_min() * C * kappa1, sw * (shape.depth() - 1) * C * kappa1};
}

double eigencount_bound(const TheoryStats& stats, const NetworkShape& shape, double k, double samples) {
    if (!(k > 0.0)) throw DomainError("eigenvalue threshold k must be > 0");
    const double C = shape.outputs();
    const double markov = shape.alpha() * stats.kappa1 * C * shape.base_width / k;
    return std::min(markov, C * samples);
}

HighDimBounds high_dim_output_bounds(const TheoryStats& stats, const NetworkShape& shape) {
    const double C = shape.outputs();
    HighDimBounds b;
    b.mean = stats.mean_eig;
    b.second_moment = {stats.second_moment, C * stats.second_moment};
    b.max_eig = {stats.max_eig, std::sqrt(shape.alpha() * C * stats.second_moment) * shape.base_width};
    return b;
}

TheoryStats predict(const NetworkShape& shape, double samples, double momentum, double qhat0, double qhat_st0) {
    return theory_stats(shape, solve_macro_state(shape, qhat0, qhat_st0), samples, momentum);
}

}  // namespace fimstat::meanfield
