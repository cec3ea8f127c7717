#include "fimstat/netsim/network.hpp"

#include "fimstat/errors.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>

namespace fimstat::netsim {

namespace {

Eigen::MatrixXd apply(const meanfield::Activation& act, const Eigen::MatrixXd& u) {
    using meanfield::ActivationKind;
    switch (act.kind()) {
        case ActivationKind::linear: return u;
        case ActivationKind::relu: return u.cwiseMax(0.0);
        case ActivationKind::tanh: return u.array().tanh().matrix();
        default: return u.unaryExpr([&](double x) { return act.value(x); });
    }
}

Eigen::MatrixXd apply_derivative(const meanfield::Activation& act, const Eigen::MatrixXd& u) {
    using meanfield::ActivationKind;
    switch (act.kind()) {
        case ActivationKind::linear: return Eigen::MatrixXd::Ones(u.rows(), u.cols());
        case ActivationKind::relu: return (u.array() > 0.0).cast<double>().matrix();
        default: return u.unaryExpr([&](double x) { return act.derivative(x); });
    }
}

// Returns the layer of the first non-finite pre-activation, or 0.
int forward_into(const ParameterSet& params, const Eigen::MatrixXd& inputs, ActivationRecord& rec) {
    const auto& shape = params.shape;
    const int L = shape.depth();
    if (inputs.cols() != shape.input_width())
        throw DomainError(fmt::format("input dimension {} does not match M0 = {}", inputs.cols(), shape.input_width()));
    rec.pre.assign(static_cast<std::size_t>(L + 1), Eigen::MatrixXd());
    rec.post.assign(static_cast<std::size_t>(L), Eigen::MatrixXd());
    rec.post[0] = inputs.transpose();
    for (int l = 1; l <= L; ++l) {
        auto& u = rec.pre[static_cast<std::size_t>(l)];
        u.noalias() = params.weights(l) * rec.post[static_cast<std::size_t>(l - 1)];
        u.colwise() += params.biases(l);
        if (!u.allFinite()) return l;
        if (l < L) rec.post[static_cast<std::size_t>(l)] = apply(shape.activation(l), u);
    }
    return 0;
}

}  // namespace

ActivationRecord forward(const ParameterSet& params, const Eigen::MatrixXd& inputs) {
    ActivationRecord rec;
    if (const int bad = forward_into(params, inputs, rec)) throw OverflowError("non-finite pre-activation", bad);
    return rec;
}

GradientBatch backward(const ParameterSet& params, const ActivationRecord& record) {
    const auto& shape = params.shape;
    const int L = shape.depth();
    if (static_cast<int>(record.pre.size()) != L + 1 || static_cast<int>(record.post.size()) != L)
        throw DomainError("activation record does not match the network depth");
    const int T = record.samples();
    const int C = shape.outputs();

    GradientBatch g;
    g.shape = shape;
    g.samples = T;
    g.deltas.assign(static_cast<std::size_t>(L + 1), Eigen::MatrixXd());
    g.inputs.assign(static_cast<std::size_t>(L + 1), Eigen::MatrixXd());
    for (int l = 1; l <= L; ++l) g.inputs[static_cast<std::size_t>(l)] = record.post[static_cast<std::size_t>(l - 1)];

    auto& top = g.deltas[static_cast<std::size_t>(L)];
    top = Eigen::MatrixXd::Zero(C, static_cast<Eigen::Index>(C) * T);
    for (int k = 0; k < C; ++k) top.row(k).segment(static_cast<Eigen::Index>(k) * T, T).setOnes();

    for (int l = L - 1; l >= 1; --l) {
        const Eigen::MatrixXd dphi = apply_derivative(shape.activation(l), record.pre[static_cast<std::size_t>(l)]);
        auto& d = g.deltas[static_cast<std::size_t>(l)];
        d.noalias() = params.weights(l + 1).transpose() * g.deltas[static_cast<std::size_t>(l + 1)];
        for (int k = 0; k < C; ++k) d.middleCols(static_cast<Eigen::Index>(k) * T, T).array() *= dphi.array();
    }
    return g;
}

LossGradient loss_and_gradient(const ParameterSet& params, const Eigen::MatrixXd& inputs,
                               const Eigen::MatrixXd& targets) {
    const auto& shape = params.shape;
    const int L = shape.depth();
    const double T = static_cast<double>(inputs.rows());
    if (targets.rows() != inputs.rows() || targets.cols() != shape.outputs())
        throw DomainError("targets must be T x C");

    LossGradient out;
    out.grad = Eigen::VectorXd::Zero(params.size());
    ActivationRecord rec;
    if (forward_into(params, inputs, rec) != 0) {
        out.loss = std::numeric_limits<double>::infinity();
        out.finite = false;
        return out;
    }
    Eigen::MatrixXd d = rec.outputs() - targets.transpose();  // C x T
    out.loss = 0.5 * d.squaredNorm() / T;

    for (int l = L; l >= 1; --l) {
        const auto& h = rec.post[static_cast<std::size_t>(l - 1)];
        Eigen::Map<RowMatrix> gw(out.grad.data() + shape.weight_offset(l), shape.width(l), shape.width(l - 1));
        gw.noalias() = d * h.transpose() / T;
        out.grad.segment(static_cast<Eigen::Index>(shape.bias_offset(l)), shape.width(l)) = d.rowwise().sum() / T;
        if (l > 1) {
            Eigen::MatrixXd next = params.weights(l).transpose() * d;
            next.array() *= apply_derivative(shape.activation(l - 1), rec.pre[static_cast<std::size_t>(l - 1)]).array();
            d = std::move(next);
        }
    }
    out.finite = std::isfinite(out.loss) && out.grad.allFinite();
    return out;
}

double loss(const ParameterSet& params, const Eigen::MatrixXd& inputs, const Eigen::MatrixXd& targets) {
    ActivationRecord rec;
    if (forward_into(params, inputs, rec) != 0) return std::numeric_limits<double>::infinity();
    return 0.5 * (rec.outputs() - targets.transpose()).squaredNorm() / static_cast<double>(inputs.rows());
}

}  // namespace fimstat::netsim
