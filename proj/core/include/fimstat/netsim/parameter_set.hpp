#pragma once

#include "fimstat/meanfield/network_shape.hpp"

#include <Eigen/Core>

#include <cstdint>

namespace fimstat::netsim {

using meanfield::NetworkShape;

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using WeightMap = Eigen::Map<RowMatrix>;
using ConstWeightMap = Eigen::Map<const RowMatrix>;
using BiasMap = Eigen::Map<Eigen::VectorXd>;
using ConstBiasMap = Eigen::Map<const Eigen::VectorXd>;

/// All weights and biases of one network, stored as a single flat vector in
/// the layer-major order of NetworkShape::weight_offset / bias_offset.
/// W^l is row-major, so W^l_{ij} sits at weight_offset(l) + i * M_{l-1} + j.
struct ParameterSet {
    NetworkShape shape;
    std::uint64_t seed = 0;
    Eigen::VectorXd theta;

    /// W^l, an M_l x M_{l-1} view (l = 1..L).
    WeightMap weights(int l);
    ConstWeightMap weights(int l) const;
    /// b^l, an M_l view.
    BiasMap biases(int l);
    ConstBiasMap biases(int l) const;

    Eigen::Index size() const noexcept { return theta.size(); }
    /// theta with every bias entry set to zero.
    Eigen::VectorXd weight_only() const;
};

/// W^l_{ij} ~ N(0, sigma_w2 / M_{l-1}), b^l_i ~ N(0, sigma_b2), each layer
/// drawn from its own counter-based stream so the result depends only on
/// (shape, seed).
ParameterSet sample_network(const NetworkShape& shape, std::uint64_t seed);

ParameterSet zero_parameters(const NetworkShape& shape);

}  // namespace fimstat::netsim
