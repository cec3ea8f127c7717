#pragma once

#include "fimstat/data/sample_batch.hpp"
#include "fimstat/netsim/parameter_set.hpp"
#include "fimstat/trainer/momentum.hpp"

#include <cstdint>
#include <vector>

namespace fimstat::trainer {

/// losses[t] is the training loss at theta_t, recorded before update t.
/// A run stops early as soon as a loss exceeds the divergence threshold or
/// is not finite.
struct Trajectory {
    std::vector<double> losses;
    bool diverged = false;
    int steps_run = 0;  // updates applied
    double final_loss() const { return losses.empty() ? 0.0 : losses.back(); }
};

/// Full-batch momentum descent on the squared loss; config.batch is ignored.
Trajectory train_full_batch(netsim::ParameterSet student, const Eigen::MatrixXd& inputs,
                            const Eigen::MatrixXd& targets, const TrainConfig& config);

/// Teacher and student share the shape and its variances. Inputs are
/// Gaussian (seed `data_seed`), targets are the teacher's outputs.
Trajectory teacher_student_run(const netsim::NetworkShape& shape, std::uint64_t seed_teacher,
                               std::uint64_t seed_student, const TrainConfig& config, int samples,
                               std::uint64_t data_seed);

/// Minibatch momentum SGD over `epochs` passes of a labelled dataset,
/// reshuffled every epoch from `seed`; the student is sampled from the same
/// seed. A trailing partial minibatch is dropped; config.steps is ignored.
Trajectory sgd_dataset_run(const netsim::NetworkShape& shape, const data::SampleBatch& dataset,
                           const TrainConfig& config, std::uint64_t seed, int epochs = 1);

/// Fisher-Yates permutation of 0..n-1 driven by the shuffle stream.
std::vector<Eigen::Index> shuffled_indices(Eigen::Index n, std::uint64_t seed, std::uint32_t epoch);

}  // namespace fimstat::trainer
