#include "fimstat/errors.hpp"
#include "fimstat/meanfield/theory.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <limits>

using namespace fimstat::meanfield;

namespace {
const double inf = std::numeric_limits<double>::infinity();

NetworkShape linear_benchmark(int width = 1000) {
    return NetworkShape::uniform(3, width, 1, 1.0, 0.1, Activation::linear());
}
}  // namespace

TEST(Theory, LinearBenchmarkKappas) {
    const auto shape = linear_benchmark();
    const auto ref = oracle::linear_macro(3, 1.0, 0.1);
    // alpha_{l-1} / alpha = 1/2 for every l
    double k1 = 0, k2 = 0;
    for (int l = 1; l <= 3; ++l) {
        k1 += 0.5 * ref.qtil[l] * ref.qhat[l - 1];
        k2 += 0.5 * ref.qtil[l] * ref.qhat_st[l - 1];
    }
    const auto s = predict(shape, inf);
    EXPECT_NEAR(s.kappa1, k1, 1e-14);
    EXPECT_NEAR(s.kappa2, k2, 1e-14);
    EXPECT_NEAR(s.kappa1, 1.65, 1e-14);
    EXPECT_NEAR(s.kappa2, 0.15, 1e-14);
    EXPECT_NEAR(s.mean_eig, 0.00165, 1e-17);
    EXPECT_NEAR(s.max_eig, 300.0, 1e-11);
}

TEST(Theory, FiniteSampleFormulas) {
    const auto s = predict(linear_benchmark(), 100);
    EXPECT_NEAR(s.max_eig, (0.99 * 0.15 + 0.01 * 1.65) * 2 * 1000, 1e-10);
    EXPECT_NEAR(s.max_eig, 330.0, 1e-10);
    EXPECT_NEAR(s.second_moment, 2 * (0.99 * 0.15 * 0.15 + 0.01 * 1.65 * 1.65), 1e-15);
    const auto one = predict(linear_benchmark(), 1);
    EXPECT_DOUBLE_EQ(one.second_moment, 2 * 1.65 * 1.65 * 1.0 + 0.0 * one.kappa2);
    EXPECT_NEAR(one.max_eig, 2 * 1.65 * 1000, 1e-10);
}

TEST(Theory, DefinitionsHoldExactly) {
    const auto shape = NetworkShape::uniform(4, 300, 3, 2.0, 0.1, Activation::relu());
    const auto m = solve_macro_state(shape);
    const double T = 64, mu = 0.3;
    const auto s = theory_stats(shape, m, T, mu);
    EXPECT_EQ(s.mean_eig, 3 * s.kappa1 / 300);
    EXPECT_EQ(s.critical_lr, 2 * (1 + mu) / s.max_eig);
}

TEST(Theory, MomentumScalesCriticalRate) {
    const auto a = predict(linear_benchmark(), 100, 0.0);
    const auto b = predict(linear_benchmark(), 100, 0.9);
    EXPECT_NEAR(b.critical_lr / a.critical_lr, 1.9, 1e-14);
}

TEST(Theory, ZeroMaxEigenvalueIsAnError) {
    // Odd activation without bias and T -> infinity: kappa2 = 0, lambda_max = 0.
    const auto shape = NetworkShape::uniform(3, 100, 1, 1.5, 0.0, Activation::erf());
    EXPECT_THROW(predict(shape, inf), fimstat::DomainError);
    const auto s = predict(shape, 10);
    EXPECT_FALSE(s.leading_order_reliable);
    EXPECT_EQ(s.kappa2, 0.0);
}

TEST(Theory, InputValidation) {
    const auto shape = linear_benchmark();
    const auto m = solve_macro_state(shape);
    EXPECT_THROW(theory_stats(shape, m, 0.5), fimstat::DomainError);
    EXPECT_THROW(theory_stats(shape, m, 10, 1.0), fimstat::DomainError);
}

TEST(Theory, KappaOrdering) {
    for (const auto& act : {Activation::relu(), Activation::erf(), Activation::tanh()}) {
        const auto s = predict(NetworkShape::uniform(4, 50, 1, 2.0, 0.2, act), inf);
        EXPECT_GE(s.kappa1, s.kappa2) << act.name();
    }
}

TEST(FisherRao, UniformAndNonUniform) {
    const auto shape = linear_benchmark();
    const auto fr = fisher_rao_theory(shape, 1.65);
    EXPECT_NEAR(fr.upper_bound, 3.3, 1e-14);
    EXPECT_NEAR(fr.uniform_width_value, 3.3, 1e-14);

    const auto wide = NetworkShape::from_coefficients(100, {1, 2, 1}, 1, 1.0, 0.1, Activation::linear());
    EXPECT_DOUBLE_EQ(wide.alpha(), 4.0);
    const auto k1 = predict(wide, inf).kappa1;
    const auto f2 = fisher_rao_theory(wide, k1);
    EXPECT_NEAR(f2.upper_bound, 1.0 * (4.0 / 1.0) * k1, 1e-14);
    EXPECT_GE(f2.upper_bound, f2.uniform_width_value);
}

TEST(EigencountBound, Branches) {
    const auto shape = linear_benchmark();
    const auto s = predict(shape, 100);
    EXPECT_NEAR(eigencount_bound(s, shape, 1.0, 100), 100.0, 0.0);
    EXPECT_NEAR(eigencount_bound(s, shape, 100.0, 100), 33.0, 1e-12);
    EXPECT_LT(eigencount_bound(s, shape, 1e12, 100), 1e-8);
    EXPECT_EQ(eigencount_bound(s, shape, 1e-9, 5), 5.0);
    EXPECT_THROW(eigencount_bound(s, shape, 0.0, 5), fimstat::DomainError);
}

TEST(HighDimBounds, CollapseAndEndpoints) {
    const auto one = linear_benchmark();
    const auto s1 = predict(one, 100);
    const auto b1 = high_dim_output_bounds(s1, one);
    EXPECT_EQ(b1.second_moment.lo, b1.second_moment.hi);
    EXPECT_NEAR(b1.max_eig.lo, 330.0, 1e-10);
    // For C = 1 the upper end sqrt(alpha s) M is not below lambda_max.
    EXPECT_GE(b1.max_eig.hi, b1.max_eig.lo);

    const auto many = NetworkShape::uniform(3, 128, 128, 1.0, 0.1, Activation::linear());
    const auto s = predict(many, 8);
    const auto b = high_dim_output_bounds(s, many);
    const double sl = 128 * 2 * (7.0 / 8 * 0.0225 + 1.65 * 1.65 / 8);
    EXPECT_NEAR(b.mean, 128 * 1.65 / 128, 1e-14);
    EXPECT_NEAR(b.second_moment.lo, sl, 1e-12);
    EXPECT_NEAR(b.second_moment.hi, 128 * sl, 1e-9);
    EXPECT_NEAR(b.max_eig.hi, std::sqrt(2 * 128 * sl) * 128, 1e-9);
}

TEST(HighDimBounds, ZeroSecondMoment) {
    TheoryStats s;
    const auto shape = linear_benchmark();
    const auto b = high_dim_output_bounds(s, shape);
    EXPECT_EQ(b.mean, 0.0);
    EXPECT_EQ(b.second_moment.hi, 0.0);
    EXPECT_EQ(b.max_eig.hi, 0.0);
}
