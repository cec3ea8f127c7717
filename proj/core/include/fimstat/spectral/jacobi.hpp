#pragma once

#include <Eigen/Core>

namespace fimstat::spectral {

/// Eigenvalues (ascending) of a real symmetric matrix by cyclic Jacobi
/// rotations. Slow, O(n^3) per sweep, but independent of the LAPACK-style
/// solver used elsewhere. Throws SpectralError after `max_sweeps` sweeps
/// without the off-diagonal mass dropping below tol * ||A||_F.
Eigen::VectorXd jacobi_eigenvalues(Eigen::MatrixXd a, double tol = 1e-15, int max_sweeps = 100);

}  // namespace fimstat::spectral
