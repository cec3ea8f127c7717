#include "fimstat/data/sample_batch.hpp"

#include "fimstat/errors.hpp"
#include "fimstat/rng.hpp"

#include <fmt/format.h>
#include <fmt/os.h>

#include <cmath>

namespace fimstat::data {

SampleBatch SampleBatch::slice(Eigen::Index first, Eigen::Index count) const {
    if (first < 0 || count < 0 || first + count > size()) throw DomainError("batch slice out of range");
    SampleBatch out;
    out.inputs = inputs.middleRows(first, count);
    if (has_targets()) out.targets = targets.middleRows(first, count);
    out.provenance = provenance;
    return out;
}

SampleBatch gaussian_batch(Eigen::Index samples, Eigen::Index dimension, std::uint64_t seed) {
    if (samples < 1 || dimension < 1) throw DomainError("gaussian batch needs T >= 1 and M0 >= 1");
    SampleBatch b;
    // Row-major fill so sample t occupies indices [t*M0, (t+1)*M0).
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> x(samples, dimension);
    GaussianSource(seed, Stream::inputs).fill_normal({x.data(), static_cast<std::size_t>(x.size())}, 0);
    b.inputs = x;
    b.provenance = fmt::format("gaussian(seed={})", seed);
    return b;
}

void standardize_rows(Eigen::MatrixXd& rows) {
    const double n = static_cast<double>(rows.cols());
    for (Eigen::Index t = 0; t < rows.rows(); ++t) {
        auto row = rows.row(t);
        const double mean = row.mean();
        row.array() -= mean;
        const double var = row.squaredNorm() / n;
        if (var > 0.0) {
            row /= std::sqrt(var);
        } else {
            row.setZero();
        }
    }
}

double mean_pairwise_overlap(const Eigen::MatrixXd& inputs, Eigen::Index max_samples) {
    const Eigen::Index n = std::min(inputs.rows(), max_samples);
    if (n < 2) throw DomainError("pairwise overlap needs at least two samples");
    const Eigen::MatrixXd x = inputs.topRows(n);
    const Eigen::MatrixXd gram = x * x.transpose() / static_cast<double>(inputs.cols());
    const double total = gram.sum() - gram.trace();
    return total / (static_cast<double>(n) * static_cast<double>(n - 1));
}

void write_csv(const SampleBatch& batch, const std::filesystem::path& path) {
    auto out = fmt::output_file(path.string());
    out.print("t");
    for (Eigen::Index i = 0; i < batch.dimension(); ++i) out.print(",x{}", i);
    for (Eigen::Index k = 0; k < batch.targets.cols(); ++k) out.print(",y{}", k);
    out.print("\n");
    for (Eigen::Index t = 0; t < batch.size(); ++t) {
        out.print("{}", t);
        for (Eigen::Index i = 0; i < batch.dimension(); ++i) out.print(",{:.17g}", batch.inputs(t, i));
        for (Eigen::Index k = 0; k < batch.targets.cols(); ++k) out.print(",{:.17g}", batch.targets(t, k));
        out.print("\n");
    }
}

}  // namespace fimstat::data
