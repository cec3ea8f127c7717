#pragma once

#include "fimstat/meanfield/network_shape.hpp"

#include <Eigen/Core>

#include <vector>

namespace fimstat::netsim {

/// Per-sample, per-output parameter gradients grad_theta f_k(t), kept in
/// factored form.
///
/// Column (k, t) of B has index k * T + t. For weight layer l its W^l block
/// is the outer product delta^l_{k}(t) h^{l-1}(t)^T and its b^l block is
/// delta^l_{k}(t). `deltas[l]` is M_l x CT and `inputs[l]` is h^{l-1},
/// M_{l-1} x T. Index 0 of both vectors is unused.
struct GradientBatch {
    meanfield::NetworkShape shape;
    int samples = 0;  // T
    std::vector<Eigen::MatrixXd> deltas;
    std::vector<Eigen::MatrixXd> inputs;

    int outputs() const { return shape.outputs(); }
    Eigen::Index columns() const { return static_cast<Eigen::Index>(outputs()) * samples; }
    Eigen::Index rows() const { return static_cast<Eigen::Index>(shape.parameter_count()); }

    /// Materialises B (P x CT). Intended for small networks.
    Eigen::MatrixXd dense() const;
    /// One column of B.
    Eigen::VectorXd column(int k, int t) const;
    /// B^T v for a P-vector v, without forming B.
    Eigen::VectorXd transpose_times(const Eigen::VectorXd& v) const;
};

}  // namespace fimstat::netsim
