#include "fimstat/netsim/gradient_batch.hpp"

#include "fimstat/errors.hpp"

namespace fimstat::netsim {

Eigen::VectorXd GradientBatch::column(int k, int t) const {
    const Eigen::Index col = static_cast<Eigen::Index>(k) * samples + t;
    Eigen::VectorXd out(rows());
    for (int l = 1; l <= shape.depth(); ++l) {
        const auto& d = deltas[static_cast<std::size_t>(l)];
        const auto& h = inputs[static_cast<std::size_t>(l)];
        const Eigen::Index in = h.rows();
        Eigen::Index off = static_cast<Eigen::Index>(shape.weight_offset(l));
        for (Eigen::Index i = 0; i < d.rows(); ++i) {
            out.segment(off, in) = d(i, col) * h.col(t);
            off += in;
        }
        out.segment(static_cast<Eigen::Index>(shape.bias_offset(l)), d.rows()) = d.col(col);
    }
    return out;
}

Eigen::MatrixXd GradientBatch::dense() const {
    Eigen::MatrixXd b(rows(), columns());
    for (int k = 0; k < outputs(); ++k)
        for (int t = 0; t < samples; ++t) b.col(static_cast<Eigen::Index>(k) * samples + t) = column(k, t);
    return b;
}

Eigen::VectorXd GradientBatch::transpose_times(const Eigen::VectorXd& v) const {
    if (v.size() != rows()) throw DomainError("vector length does not match parameter count");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(columns());
    for (int l = 1; l <= shape.depth(); ++l) {
        const auto& d = deltas[static_cast<std::size_t>(l)];
        const auto& h = inputs[static_cast<std::size_t>(l)];
        Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> w(
            v.data() + shape.weight_offset(l), d.rows(), h.rows());
        Eigen::Map<const Eigen::VectorXd> b(v.data() + shape.bias_offset(l), d.rows());
        const Eigen::MatrixXd wh = (w * h).colwise() + b;  // M_l x T
        for (int k = 0; k < outputs(); ++k) {
            const Eigen::Index first = static_cast<Eigen::Index>(k) * samples;
            out.segment(first, samples) +=
                (d.middleCols(first, samples).array() * wh.array()).colwise().sum().transpose().matrix();
        }
    }
    return out;
}

}  // namespace fimstat::netsim
