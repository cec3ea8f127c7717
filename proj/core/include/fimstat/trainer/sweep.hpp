#pragma once

#include "fimstat/data/sample_batch.hpp"
#include "fimstat/meanfield/network_shape.hpp"
#include "fimstat/trainer/momentum.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

namespace fimstat::trainer {

/// Grid of (width M, learning rate eta) training runs. The shape for width M
/// is uniform: L layers of width M, `outputs` linear outputs, input width M
/// unless `input_width` is set.
struct SweepConfig {
    int depth = 4;
    int outputs = 10;
    double sigma_w2 = 2.0;
    double sigma_b2 = 0.1;
    meanfield::Activation activation = meanfield::Activation::relu();
    std::optional<int> input_width;
    std::vector<int> widths{128, 256, 512};
    std::vector<double> etas;
    int trials = 5;
    int samples = 100;  // T for teacher-student runs
    TrainConfig train{.eta = 0.0, .mu = 0.9, .steps = 100};
    std::uint64_t seed = 1;
    int jobs = 1;
    /// Dataset runs only: cross-sample input overlap fed to the theory;
    /// defaults to the empirical mean pairwise overlap.
    std::optional<double> qhat_st0;
};

struct SweepCell {
    int width = 0;
    double eta = 0.0;
    int trial = 0;
    double final_loss = 0.0;
    bool diverged = false;
    int steps_run = 0;
    double eta_c = 0.0;
};

struct SweepResult {
    std::vector<int> widths;
    std::vector<double> etas;
    std::vector<double> eta_c;                  // theory, per width
    std::vector<SweepCell> cells;               // width-major, then eta, then trial
    std::vector<std::vector<double>> mean_loss; // [width][eta], over trials
    std::vector<std::vector<bool>> diverged;    // [width][eta], any trial diverged
    /// Smallest eta whose cell diverged, per width; NaN if none did.
    std::vector<double> boundary;
};

/// n log-spaced points from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, int n);

meanfield::NetworkShape sweep_shape(const SweepConfig& config, int width);

/// Teacher-student grid. For a given (M, trial) every eta sees the same
/// teacher, student and inputs.
SweepResult sweep(const SweepConfig& config);

/// Minibatch SGD on a dataset (config.train.batch samples per step). The
/// theoretical eta_c uses T = batch, qhat0 = 1 and qhat_st0 as configured.
SweepResult dataset_sweep(const SweepConfig& config, const data::SampleBatch& dataset, int epochs = 1);

/// M,eta,trial,final_loss,diverged,steps_run,eta_c_theory
void write_sweep_csv(const SweepResult& result, const std::filesystem::path& path);

/// {"widths", "etas", "mean_loss" [width][eta], "diverged", "eta_c", "boundary"}
void write_plot_data(const SweepResult& result, const std::filesystem::path& path);

}  // namespace fimstat::trainer
