#include "fimstat/spectral/jacobi.hpp"

#include "fimstat/errors.hpp"

#include <algorithm>
#include <cmath>

namespace fimstat::spectral {

Eigen::VectorXd jacobi_eigenvalues(Eigen::MatrixXd a, double tol, int max_sweeps) {
    const Eigen::Index n = a.rows();
    if (a.cols() != n) throw SpectralError("Jacobi needs a square matrix");
    const double scale = a.norm();
    if (scale == 0.0 || n < 2) {
        Eigen::VectorXd d = a.diagonal();
        std::sort(d.begin(), d.end());
        return d;
    }
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (std::sqrt(2.0 * off) <= tol * scale) {
            Eigen::VectorXd d = a.diagonal();
            std::sort(d.begin(), d.end());
            return d;
        }
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                // Rutishauser's stable rotation
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    throw SpectralError("Jacobi eigenvalue iteration did not converge");
}

}  // namespace fimstat::spectral
