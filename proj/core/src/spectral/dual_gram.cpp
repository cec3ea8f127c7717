#include "fimstat/spectral/dual_gram.hpp"

#include "fimstat/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>

namespace fimstat::spectral {

DualGram build_dual_gram(const netsim::GradientBatch& batch) {
    const int T = batch.samples;
    const int C = batch.outputs();
    const Eigen::Index n = batch.columns();
    DualGram g;
    g.samples = T;
    g.outputs = C;
    g.parameters = batch.shape.parameter_count();
    g.matrix = Eigen::MatrixXd::Zero(n, n);

    for (int l = 1; l <= batch.shape.depth(); ++l) {
        const auto& d = batch.deltas[static_cast<std::size_t>(l)];
        const auto& h = batch.inputs[static_cast<std::size_t>(l)];
        Eigen::MatrixXd dd = Eigen::MatrixXd::Zero(n, n);
        dd.selfadjointView<Eigen::Lower>().rankUpdate(d.transpose());
        Eigen::MatrixXd hh = h.transpose() * h;
        hh.array() += 1.0;
        for (int k = 0; k < C; ++k)
            for (int kp = 0; kp <= k; ++kp)
                g.matrix.block(static_cast<Eigen::Index>(k) * T, static_cast<Eigen::Index>(kp) * T, T, T).array() +=
                    dd.block(static_cast<Eigen::Index>(k) * T, static_cast<Eigen::Index>(kp) * T, T, T).array() *
                    hh.array();
    }
    g.matrix /= static_cast<double>(T);
    // Only the lower triangle of the diagonal blocks is trustworthy.
    g.matrix.triangularView<Eigen::StrictlyUpper>() = g.matrix.transpose();
    return g;
}

DualGram dual_gram_from_dense(const Eigen::MatrixXd& b, int samples, int outputs) {
    if (b.cols() != static_cast<Eigen::Index>(samples) * outputs) throw DomainError("B must have C*T columns");
    DualGram g;
    g.samples = samples;
    g.outputs = outputs;
    g.parameters = static_cast<std::size_t>(b.rows());
    g.matrix = b.transpose() * b / static_cast<double>(samples);
    g.matrix = 0.5 * (g.matrix + g.matrix.transpose()).eval();
    return g;
}

Eigen::VectorXd eigenvalues(const DualGram& g) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g.matrix, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw SpectralError("symmetric eigensolver did not converge");
    return solver.eigenvalues();
}

EmpiricalStats EmpiricalStats::renormalised(double parameters) const {
    EmpiricalStats s = *this;
    s.normaliser = parameters;
    s.mean_eig = mean_eig * normaliser / parameters;
    s.second_moment = second_moment * normaliser / parameters;
    return s;
}

EmpiricalStats stats_from_spectrum(const Eigen::VectorXd& eigenvalues, double parameters, std::span<const double> ks) {
    if (!(parameters > 0.0)) throw DomainError("parameter count must be positive");
    EmpiricalStats s;
    s.normaliser = parameters;
    s.mean_eig = eigenvalues.sum() / parameters;
    s.second_moment = eigenvalues.squaredNorm() / parameters;
    s.max_eig = eigenvalues.size() ? std::max(0.0, eigenvalues.maxCoeff()) : 0.0;
    s.min_eig = eigenvalues.size() ? eigenvalues.minCoeff() : 0.0;
    for (double k : ks) {
        const auto n = static_cast<std::size_t>((eigenvalues.array().max(0.0) >= k).count());
        s.eigencounts.emplace_back(k, n);
    }
    return s;
}

EmpiricalStats empirical_stats(const DualGram& g, double parameters, std::span<const double> ks) {
    return stats_from_spectrum(eigenvalues(g), parameters, ks);
}

double fisher_rao_empirical(const netsim::GradientBatch& batch, const netsim::ParameterSet& params) {
    return batch.transpose_times(params.weight_only()).squaredNorm() / batch.samples;
}

}  // namespace fimstat::spectral
