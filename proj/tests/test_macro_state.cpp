#include "fimstat/errors.hpp"
#include "fimstat/meanfield/macro_state.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace fimstat::meanfield;

TEST(Forward, LinearBenchmark) {
    const auto shape = NetworkShape::uniform(3, 1000, 1, 1.0, 0.1, Activation::linear());
    const auto m = forward_recurrence(shape);
    const auto ref = oracle::linear_macro(3, 1.0, 0.1);
    for (int l = 0; l < 3; ++l) {
        EXPECT_NEAR(m.qhat[l], ref.qhat[l], 1e-15);
        EXPECT_NEAR(m.qhat_st[l], ref.qhat_st[l], 1e-15);
    }
    EXPECT_NEAR(m.qhat[1], 1.1, 1e-15);
    EXPECT_NEAR(m.qhat[2], 1.2, 1e-15);
    EXPECT_NEAR(m.qhat_st[2], 0.2, 1e-15);
    for (int l = 0; l < 3; ++l) EXPECT_DOUBLE_EQ(m.q[l + 1], 1.0 * m.qhat[l] + 0.1);
}

TEST(Forward, ReluFirstLayer) {
    const auto shape = NetworkShape::uniform(4, 100, 1, 2.0, 0.1, Activation::relu());
    const auto m = forward_recurrence(shape);
    EXPECT_NEAR(m.qhat[1], 1.05, 1e-14);
    EXPECT_NEAR(m.qhat[2], 1.1, 1e-14);
    EXPECT_NEAR(m.qhat[3], 1.15, 1e-14);
}

TEST(Forward, ZeroInputZeroBias) {
    const auto relu = NetworkShape::uniform(4, 10, 1, 2.0, 0.0, Activation::relu());
    const auto m = forward_recurrence(relu, 0.0, 0.0);
    for (int l = 0; l < 4; ++l) EXPECT_EQ(m.qhat[l], 0.0);
    const auto erf = NetworkShape::uniform(3, 10, 1, 2.0, 0.0, Activation::erf());
    const auto e = forward_recurrence(erf, 0.0, 0.0);
    for (int l = 0; l < 3; ++l) EXPECT_EQ(e.qhat[l], 0.0);  // erf(0)^2
}

TEST(Forward, LinearFixedPoint) {
    const double sw2 = 0.5, sb2 = 0.3;
    const auto shape = NetworkShape::uniform(60, 10, 1, sw2, sb2, Activation::linear());
    const auto m = forward_recurrence(shape);
    const double star = sb2 / (1 - sw2);
    for (int l = 1; l < 60; ++l)  // closed form of the affine iteration
        EXPECT_NEAR(m.qhat[l], star + (1.0 - star) * std::pow(sw2, l), 1e-13);
    EXPECT_NEAR(m.qhat[59], star, 1e-12);
}

TEST(Forward, RejectsInconsistentInputs) {
    const auto shape = NetworkShape::uniform(3, 10, 1, 1.0, 0.1, Activation::relu());
    EXPECT_THROW(forward_recurrence(shape, 0.5, 0.8), fimstat::DomainError);
}

TEST(Forward, OverflowNamesLayer) {
    const auto shape = NetworkShape::uniform(8, 10, 1, 1e120, 0.0, Activation::linear());
    try {
        forward_recurrence(shape);
        FAIL() << "expected overflow";
    } catch (const fimstat::OverflowError& e) {
        EXPECT_GE(e.layer(), 1);
        EXPECT_LE(e.layer(), 8);
    }
}

TEST(Backward, LinearAndRelu) {
    const auto lin = solve_macro_state(NetworkShape::uniform(3, 10, 1, 1.0, 0.1, Activation::linear()));
    for (int l = 1; l <= 3; ++l) {
        EXPECT_DOUBLE_EQ(lin.qtil[l], 1.0);
        EXPECT_DOUBLE_EQ(lin.qtil_st[l], 1.0);
    }
    const auto relu = solve_macro_state(NetworkShape::uniform(3, 10, 1, 2.0, 0.1, Activation::relu()));
    for (int l = 1; l <= 3; ++l) EXPECT_NEAR(relu.qtil[l], 1.0, 1e-14);
}

TEST(Backward, BoundaryAndCauchySchwarz) {
    for (const auto& act : {Activation::erf(), Activation::tanh(), Activation::relu(), Activation::leaky_relu(0.3)}) {
        const auto m = solve_macro_state(NetworkShape::uniform(5, 10, 2, 1.8, 0.2, act), 1.0, 0.3);
        EXPECT_EQ(m.qtil[5], 1.0);
        EXPECT_EQ(m.qtil_st[5], 1.0);
        for (int l = 0; l < 5; ++l) EXPECT_LE(m.qhat_st[l], m.qhat[l] + 1e-14) << act.name();
        for (int l = 1; l <= 5; ++l) EXPECT_LE(m.qtil_st[l], m.qtil[l] + 1e-14) << act.name();
    }
}

TEST(Backward, LinearClosedFormWithSlope) {
    const auto m = solve_macro_state(NetworkShape::uniform(4, 10, 1, 1.3, 0.0, Activation::linear()));
    const auto ref = oracle::linear_macro(4, 1.3, 0.0);
    for (int l = 1; l <= 4; ++l) EXPECT_NEAR(m.qtil[l], ref.qtil[l], 1e-14);
}
