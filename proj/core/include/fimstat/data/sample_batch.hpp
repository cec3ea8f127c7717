#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <string>

namespace fimstat::data {

/// T samples: inputs is T x M0, targets is T x C (or empty).
struct SampleBatch {
    Eigen::MatrixXd inputs;
    Eigen::MatrixXd targets;
    std::string provenance;  // "gaussian(seed=...)" or "idx(<images>, <labels>)"

    Eigen::Index size() const noexcept { return inputs.rows(); }
    Eigen::Index dimension() const noexcept { return inputs.cols(); }
    bool has_targets() const noexcept { return targets.size() > 0; }

    /// Rows [first, first + count) as a new batch.
    SampleBatch slice(Eigen::Index first, Eigen::Index count) const;
};

/// x_i(t) ~ N(0, 1) i.i.d., reproducible from the seed.
SampleBatch gaussian_batch(Eigen::Index samples, Eigen::Index dimension, std::uint64_t seed);

/// Standardises each row to zero mean and unit (population) variance; a
/// constant row becomes the zero vector.
void standardize_rows(Eigen::MatrixXd& rows);

/// Mean of x(s).x(t)/M0 over pairs s != t of the first `max_samples` rows.
double mean_pairwise_overlap(const Eigen::MatrixXd& inputs, Eigen::Index max_samples = 2000);

/// CSV with header t,x0..x{M0-1}[,y0..y{C-1}].
void write_csv(const SampleBatch& batch, const std::filesystem::path& path);

}  // namespace fimstat::data
