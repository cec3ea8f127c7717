#include "fimstat/trainer/momentum.hpp"

#include "fimstat/errors.hpp"

#include <cmath>

namespace fimstat::trainer {

void TrainConfig::validate() const {
    if (!(eta >= 0.0) || !std::isfinite(eta)) throw DomainError("learning rate must be finite and >= 0");
    if (!(mu >= 0.0 && mu < 1.0)) throw DomainError("momentum must lie in [0, 1)");
    if (steps < 0) throw DomainError("step count must be >= 0");
    if (batch < 0) throw DomainError("batch size must be >= 0");
    if (!(divergence_threshold > 0.0)) throw DomainError("divergence threshold must be positive");
}

bool momentum_step(MomentumState& state, const Eigen::VectorXd& grad, double eta, double mu) {
    Eigen::VectorXd next = state.theta - eta * grad + mu * (state.theta - state.previous);
    state.previous = std::move(state.theta);
    state.theta = std::move(next);
    return state.theta.allFinite();
}

std::vector<double> simulate_quadratic(std::span<const double> lambdas, double eta, double mu, int steps) {
    const Eigen::Map<const Eigen::VectorXd> lam(lambdas.data(), static_cast<Eigen::Index>(lambdas.size()));
    MomentumState s(Eigen::VectorXd::Ones(lam.size()));
    std::vector<double> norms{s.theta.norm()};
    for (int t = 0; t < steps; ++t) {
        const Eigen::VectorXd grad = lam.cwiseProduct(s.theta);
        const bool finite = momentum_step(s, grad, eta, mu);
        norms.push_back(finite ? s.theta.norm() : INFINITY);
        if (!finite) break;
    }
    return norms;
}

bool quadratic_converges(std::span<const double> lambdas, double eta, double mu, int steps, double tol) {
    const auto norms = simulate_quadratic(lambdas, eta, mu, steps);
    return std::isfinite(norms.back()) && norms.back() < tol * norms.front();
}

}  // namespace fimstat::trainer
