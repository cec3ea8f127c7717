#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fimstat {

struct VerifyOptions {
    std::uint64_t seed = 1;
    int kernel_samples = 100;
    double kernel_tol = 1e-8;
    double fd_step = 1e-5;
    double gradient_tol = 1e-5;
    double spectral_tol = 1e-9;
    double identity_tol = 1e-8;
};

struct SuiteResult {
    std::string name;
    bool passed = false;
    double metric = 0.0;  // worst observed deviation
    double tolerance = 0.0;
    std::string detail;
};

struct VerifyReport {
    std::vector<SuiteResult> suites;
    bool passed() const noexcept;
};

/// Kernel analytic vs quadrature, backprop vs central differences (outputs
/// and loss), F vs F* spectra, recurrence and theory wiring, IDX round trip.
VerifyReport run_verification(const VerifyOptions& options = {});

SuiteResult verify_kernels(const VerifyOptions& options);
SuiteResult verify_gradients(const VerifyOptions& options);
SuiteResult verify_dual_gram(const VerifyOptions& options);
SuiteResult verify_recurrences(const VerifyOptions& options);
SuiteResult verify_idx_roundtrip(const VerifyOptions& options);

}  // namespace fimstat
