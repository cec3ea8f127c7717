#pragma once

#include <Eigen/Core>

#include <span>
#include <vector>

namespace fimstat::trainer {

struct TrainConfig {
    double eta = 1e-3;
    double mu = 0.0;
    int steps = 100;
    int batch = 0;  // 0: full batch
    double divergence_threshold = 1000.0;

    /// eta >= 0, 0 <= mu < 1, steps >= 0, batch >= 0, threshold > 0.
    void validate() const;
};

/// theta_t and theta_{t-1}; both equal at the start of training.
struct MomentumState {
    Eigen::VectorXd theta;
    Eigen::VectorXd previous;

    explicit MomentumState(Eigen::VectorXd initial) : theta(initial), previous(std::move(initial)) {}
};

/// theta_{t+1} = theta_t - eta grad + mu (theta_t - theta_{t-1}).
/// Returns false when the new iterate is not finite.
bool momentum_step(MomentumState& state, const Eigen::VectorXd& grad, double eta, double mu);

/// Runs momentum descent on E = sum_i lambda_i theta_i^2 / 2 from
/// theta_i = 1 and returns ||theta_t|| for t = 0..steps.
std::vector<double> simulate_quadratic(std::span<const double> lambdas, double eta, double mu, int steps);

/// ||theta_steps|| < tol * ||theta_0|| on the diagonal quadratic.
bool quadratic_converges(std::span<const double> lambdas, double eta, double mu, int steps = 2000, double tol = 1e-6);

}  // namespace fimstat::trainer
