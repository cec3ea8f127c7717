#include "fimstat/rng.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

using fimstat::GaussianSource;
using fimstat::Philox4x32;
using fimstat::Stream;

TEST(Philox, KnownAnswerZero) {
    const auto r = Philox4x32::block({0, 0, 0, 0}, {0, 0});
    EXPECT_EQ(r[0], 0x6627e8d5u);
    EXPECT_EQ(r[1], 0xe169c58du);
    EXPECT_EQ(r[2], 0xbc57ac4cu);
    EXPECT_EQ(r[3], 0x9b00dbd8u);
}

TEST(Philox, KnownAnswerPi) {
    const auto r = Philox4x32::block({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0});
    EXPECT_EQ(r[0], 0xd16cfe09u);
    EXPECT_EQ(r[1], 0x94fdcceb);
    EXPECT_EQ(r[2], 0x5001e420u);
    EXPECT_EQ(r[3], 0x24126ea1u);
}

TEST(GaussianSource, FillMatchesPointwise) {
    const GaussianSource g(42, Stream::weights, 3);
    std::vector<double> v(11);
    g.fill_normal(v, 5, 2.0);
    for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(v[i], 2.0 * g.normal(5 + i));
}

TEST(GaussianSource, StreamsAndLanesDiffer) {
    std::set<double> seen;
    for (auto s : {Stream::weights, Stream::biases, Stream::inputs})
        for (std::uint32_t lane = 0; lane < 3; ++lane) seen.insert(GaussianSource(7, s, lane).normal(0));
    EXPECT_EQ(seen.size(), 9u);
}

TEST(GaussianSource, MomentsWithinFiveStandardErrors) {
    const GaussianSource g(2024, Stream::generic);
    const int n = 200000;
    double s = 0, s2 = 0, u = 0;
    for (int i = 0; i < n; ++i) {
        const double x = g.normal(i);
        s += x;
        s2 += x * x;
        u += g.uniform(i);
    }
    EXPECT_LT(std::abs(s / n), 5.0 / std::sqrt(n));
    EXPECT_LT(std::abs(s2 / n - 1.0), 5.0 * std::sqrt(2.0 / n));
    EXPECT_LT(std::abs(u / n - 0.5), 5.0 * std::sqrt(1.0 / 12 / n));
}

TEST(MixSeed, DistinctChildren) {
    std::set<std::uint64_t> s;
    for (std::uint64_t t = 0; t < 100; ++t) s.insert(fimstat::mix_seed(1, t));
    EXPECT_EQ(s.size(), 100u);
    EXPECT_EQ(fimstat::mix_seed(9, 4), fimstat::mix_seed(9, 4));
}
