#pragma once

#include "fimstat/meanfield/theory.hpp"
#include "fimstat/spectral/dual_gram.hpp"
#include "fimstat/statistics.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

namespace fimstat::spectral {

struct EnsembleConfig {
    meanfield::NetworkShape shape;
    int samples = 100;  // T
    int seeds = 100;
    std::uint64_t first_seed = 1;
    std::vector<double> ks{1.0, 10.0, 100.0};
    int jobs = 1;
    std::optional<std::filesystem::path> spectra_dir;  // one CSV per seed when set
};

/// One network realisation. `normalised` divides by alpha M^2 (the count the
/// theory uses), `raw` by every parameter the network actually has.
struct SeedResult {
    std::uint64_t seed = 0;
    EmpiricalStats normalised;
    EmpiricalStats raw;
    double fisher_rao = 0.0;
    double diag_mean = 0.0;     // mean of F*[(k,t),(k,t)]
    double offdiag_mean = 0.0;  // mean of F*[(k,s),(k,t)], s != t
};

struct EnsembleSummary {
    Summary mean_eig, second_moment, max_eig, fisher_rao;
    Summary raw_mean_eig, raw_second_moment;
    Summary diag_mean, offdiag_mean;
};

struct EnsembleResult {
    EnsembleConfig config;
    meanfield::TheoryStats theory;
    meanfield::FisherRaoTheory fisher_rao_theory;
    std::vector<SeedResult> seeds;
    EnsembleSummary summary;
};

/// sample -> forward on Gaussian inputs -> backward -> F* -> spectrum.
/// Inputs come from the same seed on a separate random stream.
SeedResult run_seed(const meanfield::NetworkShape& shape, int samples, std::uint64_t seed, std::span<const double> ks,
                    const std::optional<std::filesystem::path>& spectra_dir = {});

EnsembleResult run_ensemble(const EnsembleConfig& config);

EnsembleSummary summarise(std::span<const SeedResult> seeds);

/// Per-seed rows: seed,M,T,C,activation,m_lambda,s_lambda,lambda_max,fr_norm,
/// theory_m_lambda,theory_s_lambda,theory_lambda_max,theory_fr_uniform,
/// raw_m_lambda,raw_s_lambda,n_ge_k... for the first result's k list.
void write_ensemble_csv(std::span<const EnsembleResult> results, const std::filesystem::path& path);

/// Aggregate rows: M,T,C,activation,statistic,mean,stderr,stddev,theory.
void write_summary_csv(std::span<const EnsembleResult> results, const std::filesystem::path& path);

}  // namespace fimstat::spectral
