#include "fimstat/trainer/teacher_student.hpp"

#include "fimstat/errors.hpp"
#include "fimstat/netsim/network.hpp"
#include "fimstat/rng.hpp"

#include <cmath>
#include <numeric>

namespace fimstat::trainer {

namespace {

bool over(double loss, const TrainConfig& c) { return !std::isfinite(loss) || loss > c.divergence_threshold; }

}  // namespace

Trajectory train_full_batch(netsim::ParameterSet student, const Eigen::MatrixXd& inputs,
                            const Eigen::MatrixXd& targets, const TrainConfig& config) {
    config.validate();
    Trajectory tr;
    MomentumState state(student.theta);
    for (int t = 0;; ++t) {
        student.theta = state.theta;
        const auto lg = netsim::loss_and_gradient(student, inputs, targets);
        tr.losses.push_back(lg.loss);
        if (!lg.finite || over(lg.loss, config)) {
            tr.diverged = true;
            break;
        }
        if (t == config.steps) break;
        momentum_step(state, lg.grad, config.eta, config.mu);
        ++tr.steps_run;
    }
    return tr;
}

Trajectory teacher_student_run(const netsim::NetworkShape& shape, std::uint64_t seed_teacher,
                               std::uint64_t seed_student, const TrainConfig& config, int samples,
                               std::uint64_t data_seed) {
    const auto teacher = netsim::sample_network(shape, seed_teacher);
    const auto batch = data::gaussian_batch(samples, shape.input_width(), data_seed);
    const Eigen::MatrixXd targets = netsim::forward(teacher, batch.inputs).outputs().transpose();
    return train_full_batch(netsim::sample_network(shape, seed_student), batch.inputs, targets, config);
}

std::vector<Eigen::Index> shuffled_indices(Eigen::Index n, std::uint64_t seed, std::uint32_t epoch) {
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), Eigen::Index{0});
    const GaussianSource src(seed, Stream::shuffle, epoch);
    for (Eigen::Index i = n - 1; i > 0; --i) {
        const auto j = static_cast<Eigen::Index>(src.uniform(static_cast<std::uint64_t>(i)) * static_cast<double>(i + 1));
        std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(std::min(j, i))]);
    }
    return idx;
}

Trajectory sgd_dataset_run(const netsim::NetworkShape& shape, const data::SampleBatch& dataset,
                           const TrainConfig& config, std::uint64_t seed, int epochs) {
    config.validate();
    if (!dataset.has_targets()) throw DomainError("dataset run needs targets");
    const Eigen::Index n = dataset.size();
    const Eigen::Index bs = config.batch > 0 ? config.batch : n;
    if (bs > n) throw DomainError("minibatch larger than the dataset");

    auto student = netsim::sample_network(shape, seed);
    MomentumState state(student.theta);
    Trajectory tr;
    Eigen::MatrixXd x(bs, dataset.dimension()), y(bs, dataset.targets.cols());
    for (int e = 0; e < epochs; ++e) {
        const auto order = shuffled_indices(n, seed, static_cast<std::uint32_t>(e));
        for (Eigen::Index first = 0; first + bs <= n; first += bs) {
            for (Eigen::Index r = 0; r < bs; ++r) {
                const auto src = order[static_cast<std::size_t>(first + r)];
                x.row(r) = dataset.inputs.row(src);
                y.row(r) = dataset.targets.row(src);
            }
            student.theta = state.theta;
            const auto lg = netsim::loss_and_gradient(student, x, y);
            tr.losses.push_back(lg.loss);
            if (!lg.finite || over(lg.loss, config)) {
                tr.diverged = true;
                return tr;
            }
            momentum_step(state, lg.grad, config.eta, config.mu);
            ++tr.steps_run;
        }
    }
    return tr;
}

}  // namespace fimstat::trainer
