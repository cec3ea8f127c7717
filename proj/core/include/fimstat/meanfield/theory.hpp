#pragma once

#include "fimstat/meanfield/macro_state.hpp"
#include "fimstat/meanfield/network_shape.hpp"

#include <limits>

namespace fimstat::meanfield {

/// Large-width predictions for the FIM spectrum of a random network.
struct TheoryStats {
    double kappa1 = 0.0;
    double kappa2 = 0.0;
    double mean_eig = 0.0;       // m_lambda = C kappa1 / M
    double second_moment = 0.0;  // s_lambda
    double max_eig = 0.0;        // lambda_max
    double critical_lr = 0.0;    // eta_c = 2 (1 + mu) / lambda_max
    double fisher_rao_bound = 0.0;
    double fisher_rao_uniform = 0.0;
    double samples = 0.0;        // T (may be +inf)
    double momentum = 0.0;       // mu
    /// False when kappa2 == 0 (no bias and an odd activation): s_lambda and
    /// lambda_max are then only the vanishing leading term.
    bool leading_order_reliable = true;
};

/// kappa1 = sum_{l=1}^{L} (alpha_{l-1} / alpha) qtil^l qhat^{l-1}.
double kappa1(const NetworkShape& shape, const MacroState& macro);
/// kappa2: the same sum over the cross-sample overlaps.
double kappa2(const NetworkShape& shape, const MacroState& macro);

/// Requires T >= 1 (T = +inf allowed) and 0 <= mu < 1. Throws DomainError
/// when lambda_max = 0, since eta_c is then undefined.
TheoryStats theory_stats(const NetworkShape& shape, const MacroState& macro, double samples, double momentum = 0.0);

struct FisherRaoTheory {
    double upper_bound = 0.0;          // sigma_w^2 (alpha / alpha_min) C kappa1
    double uniform_width_value = 0.0;  // sigma_w^2 (L - 1) C kappa1
};

/// With layer-dependent sigma_w^2 the largest one is used, which keeps the
/// upper bound valid.
FisherRaoTheory fisher_rao_theory(const NetworkShape& shape, double kappa1);

/// min{alpha kappa1 C M / k, C T}: bound on the number of eigenvalues >= k.
double eigencount_bound(const TheoryStats& stats, const NetworkShape& shape, double k, double samples);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double x, double rel_slack = 0.0) const noexcept {
        const double pad = rel_slack * (hi > 0.0 ? hi : 0.0);
        return x >= lo - pad && x <= hi + pad;
    }
};

/// Mean and interval bounds when C grows with M: m' = m, s' in [s, C s],
/// lambda'_max in [lambda_max, sqrt(alpha C s) M].
struct HighDimBounds {
    double mean = 0.0;
    Interval second_moment;
    Interval max_eig;
};

HighDimBounds high_dim_output_bounds(const TheoryStats& stats, const NetworkShape& shape);

/// Convenience: solve the recurrences and evaluate theory_stats in one call.
TheoryStats predict(const NetworkShape& shape, double samples, double momentum = 0.0, double qhat0 = 1.0,
                    double qhat_st0 = 0.0);

}  // namespace fimstat::meanfield
