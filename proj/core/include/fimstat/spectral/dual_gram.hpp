#pragma once

#include "fimstat/netsim/gradient_batch.hpp"
#include "fimstat/netsim/parameter_set.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace fimstat::spectral {

/// F* = B^T B / T, the CT x CT dual of the P x P empirical FIM.
/// Rows/columns are indexed k * T + t.
struct DualGram {
    Eigen::MatrixXd matrix;
    int samples = 0;
    int outputs = 0;
    std::size_t parameters = 0;
};

/// Assembled from the per-layer factors:
///   F*[(k,s),(k',t)] = (1/T) sum_l (delta^l_k(s) . delta^l_k'(t)) (h^{l-1}(s) . h^{l-1}(t) + 1)
/// then symmetrised.
DualGram build_dual_gram(const netsim::GradientBatch& batch);

/// Straight B^T B / T from a dense P x CT gradient matrix.
DualGram dual_gram_from_dense(const Eigen::MatrixXd& b, int samples, int outputs);

/// Eigenvalues in ascending order. Throws SpectralError if the solver fails.
Eigen::VectorXd eigenvalues(const DualGram& g);

struct EmpiricalStats {
    double normaliser = 0.0;     // P used for the divisions below
    double mean_eig = 0.0;       // sum lambda / P
    double second_moment = 0.0;  // sum lambda^2 / P
    double max_eig = 0.0;
    double min_eig = 0.0;        // most negative raw eigenvalue (diagnostic)
    std::vector<std::pair<double, std::size_t>> eigencounts;  // (k, N(lambda >= k))

    /// Same spectrum divided by another parameter count.
    EmpiricalStats renormalised(double parameters) const;
};

/// Negative numerical eigenvalues stay in the sums but are clamped to zero
/// for counts and the maximum.
EmpiricalStats stats_from_spectrum(const Eigen::VectorXd& eigenvalues, double parameters, std::span<const double> ks);

EmpiricalStats empirical_stats(const DualGram& g, double parameters, std::span<const double> ks);

/// theta_w^T F theta_w with biases removed from theta: ||B^T theta_w||^2 / T.
double fisher_rao_empirical(const netsim::GradientBatch& batch, const netsim::ParameterSet& params);

}  // namespace fimstat::spectral
