#pragma once

#include "fimstat/netsim/gradient_batch.hpp"
#include "fimstat/netsim/parameter_set.hpp"

#include <Eigen/Core>

#include <vector>

namespace fimstat::netsim {

/// Every intermediate of a forward pass over T samples, one column per
/// sample. pre[l] = u^l (M_l x T, l = 1..L), post[l] = h^l (M_l x T,
/// l = 0..L-1, post[0] = x). The output is f = u^L.
struct ActivationRecord {
    std::vector<Eigen::MatrixXd> pre;
    std::vector<Eigen::MatrixXd> post;

    const Eigen::MatrixXd& outputs() const { return pre.back(); }
    int samples() const { return static_cast<int>(post.front().cols()); }
};

/// inputs is T x M0 (one sample per row). Throws OverflowError on the first
/// layer whose pre-activations are not finite.
ActivationRecord forward(const ParameterSet& params, const Eigen::MatrixXd& inputs);

/// Output-layer sensitivities are unit vectors (linear outputs); deeper
/// ones follow delta^l = phi'(u^l) * (W^{l+1})^T delta^{l+1}.
GradientBatch backward(const ParameterSet& params, const ActivationRecord& record);

struct LossGradient {
    double loss = 0.0;
    Eigen::VectorXd grad;
    bool finite = true;
};

/// E = (1/2T) sum_t ||y(t) - f(t)||^2 and its gradient. targets is T x C.
/// Non-finite values are reported through `finite` instead of thrown.
LossGradient loss_and_gradient(const ParameterSet& params, const Eigen::MatrixXd& inputs,
                               const Eigen::MatrixXd& targets);

/// Loss only.
double loss(const ParameterSet& params, const Eigen::MatrixXd& inputs, const Eigen::MatrixXd& targets);

}  // namespace fimstat::netsim
