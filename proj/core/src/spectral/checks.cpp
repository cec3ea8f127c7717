#include "fimstat/spectral/checks.hpp"

#include "fimstat/errors.hpp"
#include "fimstat/spectral/jacobi.hpp"

#include <algorithm>
#include <cmath>

namespace fimstat::spectral {

bool BruteForceReport::rank_bound_ok() const noexcept {
    const auto bound = std::min<Eigen::Index>(static_cast<Eigen::Index>(parameters), columns);
    return rank_fim <= bound && rank_dual <= bound;
}

BruteForceReport brute_force_fim_check(const netsim::GradientBatch& batch, double rank_tol) {
    const auto p = batch.shape.parameter_count();
    if (p > 256) throw DomainError("brute-force FIM check is limited to P <= 256");
    const Eigen::MatrixXd b = batch.dense();
    Eigen::MatrixXd fim = b * b.transpose() / static_cast<double>(batch.samples);
    fim = 0.5 * (fim + fim.transpose()).eval();

    Eigen::VectorXd full = jacobi_eigenvalues(fim);
    Eigen::VectorXd dual = eigenvalues(build_dual_gram(batch));
    std::sort(full.begin(), full.end(), std::greater<>());
    std::sort(dual.begin(), dual.end(), std::greater<>());

    BruteForceReport r;
    r.parameters = p;
    r.columns = batch.columns();
    r.lambda_max = std::max(full[0], dual[0]);
    const Eigen::Index n = std::min(full.size(), dual.size());
    for (Eigen::Index i = 0; i < n; ++i)
        r.max_rel_deviation = std::max(r.max_rel_deviation, std::abs(full[i] - dual[i]));
    if (r.lambda_max > 0.0) r.max_rel_deviation /= r.lambda_max;
    const double cut = rank_tol * r.lambda_max;
    r.rank_fim = (full.array() > cut).count();
    r.rank_dual = (dual.array() > cut).count();
    const double tf = full.sum(), td = dual.sum();
    r.trace_rel_deviation = tf != 0.0 ? std::abs(tf - td) / std::abs(tf) : std::abs(td);
    return r;
}

double output_block_coupling(const DualGram& g) {
    if (g.outputs < 2) throw DomainError("block coupling needs at least two outputs");
    const int T = g.samples;
    const double diag = g.matrix.block(0, 0, T, T).norm();
    return diag > 0.0 ? g.matrix.block(0, T, T, T).norm() / diag : 0.0;
}

HighDimReport high_dim_check(const meanfield::NetworkShape& shape, int samples, int seeds, std::uint64_t first_seed,
                             int jobs, double k_se) {
    EnsembleConfig cfg;
    cfg.shape = shape;
    cfg.samples = samples;
    cfg.seeds = seeds;
    cfg.first_seed = first_seed;
    cfg.jobs = jobs;
    cfg.ks.clear();
    HighDimReport r;
    r.ensemble = run_ensemble(cfg);
    r.bounds = meanfield::high_dim_output_bounds(r.ensemble.theory, shape);
    const auto& s = r.ensemble.summary;
    r.mean_z = s.mean_eig.z_score(r.bounds.mean);
    r.mean_ok = s.mean_eig.within(r.bounds.mean, k_se);
    r.second_moment_ok = r.bounds.second_moment.contains(s.second_moment.mean);
    r.max_eig_ok = r.bounds.max_eig.contains(s.max_eig.mean);
    return r;
}

MarkovReport markov_check(const EnsembleResult& result) {
    MarkovReport r;
    for (const auto& s : result.seeds) {
        for (const auto& [k, n] : s.normalised.eigencounts) {
            const double bound = meanfield::eigencount_bound(result.theory, result.config.shape, k, result.config.samples);
            ++r.checks;
            if (static_cast<double>(n) > bound) ++r.violations;
            if (bound > 0.0) r.worst_ratio = std::max(r.worst_ratio, static_cast<double>(n) / bound);
        }
    }
    return r;
}

}  // namespace fimstat::spectral
