#pragma once

#include "fimstat/spectral/dual_gram.hpp"
#include "fimstat/spectral/ensemble.hpp"

#include <cstddef>
#include <cstdint>

namespace fimstat::spectral {

/// Spectrum of the full P x P FIM (Jacobi) against the spectrum of F*.
struct BruteForceReport {
    std::size_t parameters = 0;
    Eigen::Index columns = 0;    // CT
    Eigen::Index rank_fim = 0;   // eigenvalues above rank_tol * lambda_max
    Eigen::Index rank_dual = 0;
    double lambda_max = 0.0;
    /// max_i |lambda_i(F) - lambda_i(F*)| / lambda_max over the leading
    /// min(P, CT) eigenvalues of each.
    double max_rel_deviation = 0.0;
    double trace_rel_deviation = 0.0;

    bool rank_bound_ok() const noexcept;
};

/// Requires P <= 256.
BruteForceReport brute_force_fim_check(const netsim::GradientBatch& batch, double rank_tol = 1e-9);

/// ||F*(0,1)||_F / ||F*(0,0)||_F: coupling between the first two output
/// heads relative to a diagonal block. Requires C >= 2.
double output_block_coupling(const DualGram& g);

/// Ensemble test for C = O(M) outputs: mean against C kappa1 / M and the
/// second moment and maximum eigenvalue against their intervals.
struct HighDimReport {
    EnsembleResult ensemble;
    meanfield::HighDimBounds bounds;
    double mean_z = 0.0;
    bool mean_ok = false;           // within `k_se` standard errors
    bool second_moment_ok = false;  // ensemble mean inside the interval
    bool max_eig_ok = false;
    bool passed() const noexcept { return mean_ok && second_moment_ok && max_eig_ok; }
};

HighDimReport high_dim_check(const meanfield::NetworkShape& shape, int samples, int seeds, std::uint64_t first_seed,
                             int jobs, double k_se = 3.0);

/// Per-seed eigencount bound N(lambda >= k) <= min{alpha kappa1 C M / k, C T}.
struct MarkovReport {
    std::size_t checks = 0;
    std::size_t violations = 0;
    double worst_ratio = 0.0;  // max N / bound
};

MarkovReport markov_check(const EnsembleResult& result);

}  // namespace fimstat::spectral
