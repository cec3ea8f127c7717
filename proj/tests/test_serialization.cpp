#include "fimstat/errors.hpp"
#include "fimstat/netsim/serialization.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace fimstat;
using meanfield::Activation;
using meanfield::NetworkShape;

TEST(Serialization, JsonRoundTrip) {
    auto shape = NetworkShape::uniform(3, 5, 2, 1.5, 0.2, Activation::leaky_relu(0.3), 4);
    shape.activations[1] = Activation::erf();
    const auto p = netsim::sample_network(shape, 77);
    const auto back = netsim::parameters_from_json(nlohmann::json::parse(netsim::parameters_to_json(p).dump()));
    EXPECT_EQ(back.theta, p.theta);
    EXPECT_EQ(back.seed, 77u);
    EXPECT_EQ(back.shape.widths, shape.widths);
    EXPECT_EQ(back.shape.activations[0].slope(), 0.3);
    EXPECT_EQ(back.shape.activations[1].name(), "erf");
}

TEST(Serialization, BinaryRoundTripAndFile) {
    const auto shape = NetworkShape::uniform(4, 9, 3, 2.0, 0.1, Activation::relu());
    const auto p = netsim::sample_network(shape, 5);
    const auto path = std::filesystem::temp_directory_path() / "fimstat_params_test.bin";
    netsim::save_parameters(p, path);
    const auto back = netsim::load_parameters(path);
    std::filesystem::remove(path);
    EXPECT_EQ(back.theta, p.theta);
    EXPECT_EQ(back.shape.sigma_w2, shape.sigma_w2);
}

TEST(Serialization, RejectsCorruptContainers) {
    const auto p = netsim::sample_network(NetworkShape::uniform(2, 3, 1, 1.0, 0.0, Activation::tanh()), 1);
    auto bytes = netsim::encode_parameters(p);
    auto bad = bytes;
    bad[0] = 'X';
    EXPECT_THROW(netsim::decode_parameters(bad), ParseError);
    auto cut = bytes;
    cut.resize(cut.size() - 3);
    EXPECT_THROW(netsim::decode_parameters(cut), ParseError);
    const auto custom = Activation::custom("sq", [](double x) { return x * x; }, [](double x) { return 2 * x; });
    auto shape = p.shape;
    shape.activations[0] = custom;
    EXPECT_THROW(netsim::shape_to_json(shape), DomainError);
}
