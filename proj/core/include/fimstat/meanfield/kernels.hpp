#pragma once

#include "fimstat/meanfield/activation.hpp"

namespace fimstat::meanfield {

enum class KernelMethod {
    automatic,   // closed form when available, quadrature otherwise
    analytic,    // closed form only; DomainError for other activations
    quadrature,  // always integrate numerically
};

/// I_phi[a, b] = E[phi(X) phi(Y)] for a centred Gaussian pair with
/// Var X = Var Y = a and Cov(X, Y) = b. Requires a >= 0 and |b| <= a.
double kernel_I_phi(const Activation& act, double a, double b, KernelMethod method = KernelMethod::automatic);

/// Same Gaussian pair, with phi' in place of phi.
double kernel_I_phi_prime(const Activation& act, double a, double b,
                          KernelMethod method = KernelMethod::automatic);

/// E[phi(sqrt(q) u)^2] for u ~ N(0, 1); equals kernel_I_phi(act, q, q).
double gaussian_second_moment(const Activation& act, double q, KernelMethod method = KernelMethod::automatic);

/// E[phi'(sqrt(q) u)^2]; equals kernel_I_phi_prime(act, q, q).
double gaussian_derivative_second_moment(const Activation& act, double q,
                                         KernelMethod method = KernelMethod::automatic);

}  // namespace fimstat::meanfield
