#include "fimstat/netsim/parameter_set.hpp"

#include "fimstat/rng.hpp"

#include <cmath>

namespace fimstat::netsim {

WeightMap ParameterSet::weights(int l) {
    return {theta.data() + shape.weight_offset(l), shape.width(l), shape.width(l - 1)};
}

ConstWeightMap ParameterSet::weights(int l) const {
    return {theta.data() + shape.weight_offset(l), shape.width(l), shape.width(l - 1)};
}

BiasMap ParameterSet::biases(int l) { return {theta.data() + shape.bias_offset(l), shape.width(l)}; }

ConstBiasMap ParameterSet::biases(int l) const { return {theta.data() + shape.bias_offset(l), shape.width(l)}; }

Eigen::VectorXd ParameterSet::weight_only() const {
    Eigen::VectorXd w = theta;
    for (int l = 1; l <= shape.depth(); ++l)
        w.segment(static_cast<Eigen::Index>(shape.bias_offset(l)), shape.width(l)).setZero();
    return w;
}

ParameterSet zero_parameters(const NetworkShape& shape) {
    shape.validate();
    ParameterSet p;
    p.shape = shape;
    p.theta = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(shape.parameter_count()));
    return p;
}

ParameterSet sample_network(const NetworkShape& shape, std::uint64_t seed) {
    ParameterSet p = zero_parameters(shape);
    p.seed = seed;
    for (int l = 1; l <= shape.depth(); ++l) {
        const auto lane = static_cast<std::uint32_t>(l);
        auto w = p.weights(l);
        GaussianSource(seed, Stream::weights, lane)
            .fill_normal({w.data(), static_cast<std::size_t>(w.size())}, 0,
                         std::sqrt(shape.weight_variance(l) / shape.width(l - 1)));
        auto b = p.biases(l);
        GaussianSource(seed, Stream::biases, lane)
            .fill_normal({b.data(), static_cast<std::size_t>(b.size())}, 0, std::sqrt(shape.bias_variance(l)));
    }
    return p;
}

}  // namespace fimstat::netsim
