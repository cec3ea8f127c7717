#include "fimstat/data/idx.hpp"
#include "fimstat/data/sample_batch.hpp"
#include "fimstat/errors.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>

using namespace fimstat;

namespace {

data::IdxImages tiny_images() {
    data::IdxImages img;
    img.count = 3;
    img.rows = 2;
    img.cols = 2;
    img.pixels = {0, 10, 20, 30, 255, 255, 255, 255, 7, 0, 0, 1};
    return img;
}

std::filesystem::path temp(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST(Gaussian, ReproducibleAndShaped) {
    const auto a = data::gaussian_batch(7, 5, 3);
    EXPECT_EQ(a.size(), 7);
    EXPECT_EQ(a.dimension(), 5);
    EXPECT_EQ(a.inputs, data::gaussian_batch(7, 5, 3).inputs);
    EXPECT_NE(a.inputs, data::gaussian_batch(7, 5, 4).inputs);
    EXPECT_FALSE(a.has_targets());
    EXPECT_EQ(a.provenance, "gaussian(seed=3)");
    EXPECT_EQ(data::gaussian_batch(1, 4, 1).size(), 1);
    // a longer batch extends a shorter one
    EXPECT_EQ(data::gaussian_batch(3, 5, 3).inputs, a.inputs.topRows(3));
}

TEST(Gaussian, CovarianceIsIdentity) {
    const Eigen::Index T = 10000, m0 = 10;
    const Eigen::MatrixXd x = data::gaussian_batch(T, m0, 99).inputs;
    const Eigen::MatrixXd cov = x.transpose() * x / static_cast<double>(T);
    // entry standard errors: sqrt(2/T) on the diagonal, sqrt(1/T) off it
    for (Eigen::Index i = 0; i < m0; ++i)
        for (Eigen::Index j = 0; j < m0; ++j) {
            const double se = (i == j ? std::sqrt(2.0) : 1.0) / std::sqrt(static_cast<double>(T));
            EXPECT_LT(std::abs(cov(i, j) - (i == j ? 1.0 : 0.0)), 5 * se) << i << "," << j;
        }
}

TEST(Standardize, RowsAndConstantRow) {
    Eigen::MatrixXd m(2, 4);
    m << 1, 2, 3, 4, 5, 5, 5, 5;
    data::standardize_rows(m);
    EXPECT_NEAR(m.row(0).mean(), 0.0, 1e-15);
    EXPECT_NEAR(m.row(0).squaredNorm() / 4, 1.0, 1e-14);
    EXPECT_EQ(m.row(1).norm(), 0.0);
}

TEST(Overlap, IndependentRowsNearZero) {
    const auto x = data::gaussian_batch(400, 200, 1).inputs;
    EXPECT_LT(std::abs(data::mean_pairwise_overlap(x)), 0.01);
    Eigen::MatrixXd same(3, 4);
    same.rowwise() = Eigen::RowVector4d(1, -1, 1, -1);
    EXPECT_DOUBLE_EQ(data::mean_pairwise_overlap(same), 1.0);
}

TEST(Idx, RoundTrip) {
    const auto img = tiny_images();
    const auto back = data::parse_idx_images(data::encode_idx_images(img));
    EXPECT_EQ(back.count, 3u);
    EXPECT_EQ(back.rows, 2u);
    EXPECT_EQ(back.pixels, img.pixels);
    const data::IdxLabels lab{{0, 9, 4}};
    EXPECT_EQ(data::parse_idx_labels(data::encode_idx_labels(lab)).labels, lab.labels);
}

TEST(Idx, ErrorsCarryOffsets) {
    auto bytes = data::encode_idx_images(tiny_images());
    auto bad = bytes;
    bad[3] = 0x01;
    try {
        data::parse_idx_images(bad);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset(), 0u);
    }
    bytes.pop_back();
    EXPECT_THROW(data::parse_idx_images(bytes), ParseError);
    EXPECT_THROW(data::parse_idx_images(std::vector<std::uint8_t>{0, 0, 8}), ParseError);

    const auto lab = data::encode_idx_labels({{1, 2, 12}});
    try {
        data::parse_idx_labels(lab);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset(), 8u + 2u);
    }
    EXPECT_NO_THROW(data::parse_idx_labels(lab, 13));
}

TEST(Idx, LoadNormalisesAndEncodes) {
    const auto ip = temp("fimstat_test_images.idx"), lp = temp("fimstat_test_labels.idx");
    data::write_bytes(ip, data::encode_idx_images(tiny_images()));
    data::write_bytes(lp, data::encode_idx_labels({{3, 0, 9}}));
    const auto b = data::load_idx(ip, lp);
    EXPECT_EQ(b.size(), 3);
    EXPECT_EQ(b.dimension(), 4);
    for (Eigen::Index t : {0, 2}) {
        EXPECT_LT(std::abs(b.inputs.row(t).mean()), 1e-12);
        EXPECT_LT(std::abs(b.inputs.row(t).squaredNorm() / 4 - 1.0), 1e-10);
    }
    EXPECT_EQ(b.inputs.row(1).norm(), 0.0);
    EXPECT_EQ(b.targets.rows(), 3);
    EXPECT_EQ(b.targets.cols(), 10);
    EXPECT_EQ(b.targets(0, 3), 1.0);
    EXPECT_EQ(b.targets.row(0).sum(), 1.0);
    EXPECT_EQ(b.targets(2, 9), 1.0);

    data::write_bytes(lp, data::encode_idx_labels({{3, 0}}));
    EXPECT_THROW(data::load_idx(ip, lp), ParseError);
    std::filesystem::remove(ip);
    std::filesystem::remove(lp);
    EXPECT_THROW(data::read_idx_images(ip), ParseError);
}

TEST(Idx, RealMnistIfAvailable) {
    const char* dir = std::getenv("FIMSTAT_MNIST_DIR");
    if (!dir) GTEST_SKIP() << "FIMSTAT_MNIST_DIR not set";
    const std::filesystem::path d(dir);
    const auto b = data::load_idx(d / "train-images-idx3-ubyte", d / "train-labels-idx1-ubyte");
    EXPECT_EQ(b.size(), 60000);
    EXPECT_EQ(b.dimension(), 784);
    EXPECT_LT(b.inputs.rowwise().mean().cwiseAbs().maxCoeff(), 1e-12);
}
