#include "fimstat/verify.hpp"

#include "fimstat/data/idx.hpp"
#include "fimstat/errors.hpp"
#include "fimstat/meanfield/kernels.hpp"
#include "fimstat/meanfield/theory.hpp"
#include "fimstat/netsim/network.hpp"
#include "fimstat/rng.hpp"
#include "fimstat/spectral/checks.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace fimstat {

using meanfield::Activation;
using meanfield::KernelMethod;
using meanfield::NetworkShape;

namespace {

SuiteResult finish(std::string name, double metric, double tol, std::string detail) {
    return {std::move(name), metric < tol, metric, tol, std::move(detail)};
}

std::vector<Activation> all_builtin() {
    return {Activation::erf(), Activation::relu(), Activation::leaky_relu(0.1), Activation::linear(),
            Activation::tanh()};
}

}  // namespace

bool VerifyReport::passed() const noexcept {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed; });
}

SuiteResult verify_kernels(const VerifyOptions& o) {
    const GaussianSource u(o.seed, Stream::generic, 11);
    double worst = 0.0;
    std::string where;
    for (const auto& act : {Activation::erf(), Activation::relu(), Activation::linear()}) {
        for (int i = 0; i < o.kernel_samples; ++i) {
            const double a = 10.0 * u.uniform(2 * static_cast<std::uint64_t>(i));
            const double b = a * (2.0 * u.uniform(2 * static_cast<std::uint64_t>(i) + 1) - 1.0);
            for (bool prime : {false, true}) {
                const auto k = prime ? meanfield::kernel_I_phi_prime : meanfield::kernel_I_phi;
                const double d = std::abs(k(act, a, b, KernelMethod::analytic) - k(act, a, b, KernelMethod::quadrature));
                if (d > worst) {
                    worst = d;
                    where = fmt::format("{}{} at a={:.4g}, b={:.4g}", act.name(), prime ? "'" : "", a, b);
                }
            }
        }
    }
    return finish("kernels", worst, o.kernel_tol, "max |analytic - quadrature|: " + where);
}

SuiteResult verify_gradients(const VerifyOptions& o) {
    double worst = 0.0;
    std::string where;
    for (const auto& act : all_builtin()) {
        const auto shape = NetworkShape::uniform(3, 8, 2, 1.5, 0.1, act, 5);
        auto params = netsim::sample_network(shape, o.seed);
        const auto x = data::gaussian_batch(3, 5, o.seed + 1).inputs;
        const Eigen::MatrixXd b = netsim::backward(params, netsim::forward(params, x)).dense();
        const int T = static_cast<int>(x.rows());

        Eigen::MatrixXd fd(b.rows(), b.cols());
        for (Eigen::Index p = 0; p < params.size(); ++p) {
            const double keep = params.theta[p];
            params.theta[p] = keep + o.fd_step;
            const Eigen::MatrixXd up = netsim::forward(params, x).outputs();
            params.theta[p] = keep - o.fd_step;
            const Eigen::MatrixXd dn = netsim::forward(params, x).outputs();
            params.theta[p] = keep;
            for (int k = 0; k < shape.outputs(); ++k)
                for (int t = 0; t < T; ++t) fd(p, k * T + t) = (up(k, t) - dn(k, t)) / (2.0 * o.fd_step);
        }
        for (Eigen::Index c = 0; c < b.cols(); ++c) {
            const double scale = std::max(b.col(c).lpNorm<Eigen::Infinity>(), 1e-12);
            const double e = (b.col(c) - fd.col(c)).lpNorm<Eigen::Infinity>() / scale;
            if (e > worst) {
                worst = e;
                where = fmt::format("{} column {}", act.name(), c);
            }
        }

        // loss gradient against differences of the loss
        const Eigen::MatrixXd y = data::gaussian_batch(3, shape.outputs(), o.seed + 2).inputs;
        const auto lg = netsim::loss_and_gradient(params, x, y);
        Eigen::VectorXd lfd(params.size());
        for (Eigen::Index p = 0; p < params.size(); ++p) {
            const double keep = params.theta[p];
            params.theta[p] = keep + o.fd_step;
            const double up = netsim::loss(params, x, y);
            params.theta[p] = keep - o.fd_step;
            const double dn = netsim::loss(params, x, y);
            params.theta[p] = keep;
            lfd[p] = (up - dn) / (2.0 * o.fd_step);
        }
        const double e = (lg.grad - lfd).lpNorm<Eigen::Infinity>() / std::max(lg.grad.lpNorm<Eigen::Infinity>(), 1e-12);
        if (e > worst) {
            worst = e;
            where = fmt::format("{} loss gradient", act.name());
        }
    }
    return finish("gradients", worst, o.gradient_tol, "max column-relative error: " + where);
}

SuiteResult verify_dual_gram(const VerifyOptions& o) {
    struct Case {
        int depth, width, outputs, samples;
        Activation act;
    };
    const Case cases[] = {{2, 4, 1, 3, Activation::relu()},
                          {3, 6, 2, 5, Activation::erf()},
                          {3, 8, 3, 7, Activation::tanh()},
                          {2, 10, 4, 16, Activation::linear()}};
    double worst = 0.0;
    std::string where;
    for (const auto& c : cases) {
        const auto shape = NetworkShape::uniform(c.depth, c.width, c.outputs, 1.5, 0.2, c.act);
        const auto params = netsim::sample_network(shape, o.seed);
        const auto x = data::gaussian_batch(c.samples, shape.input_width(), o.seed + 7).inputs;
        const auto batch = netsim::backward(params, netsim::forward(params, x));
        const auto r = spectral::brute_force_fim_check(batch);
        const double e = std::max(r.max_rel_deviation, r.rank_bound_ok() ? 0.0 : 1.0);
        if (e >= worst) {
            worst = e;
            where = fmt::format("P={}, CT={}, ranks {}/{}", r.parameters, r.columns, r.rank_fim, r.rank_dual);
        }
    }
    return finish("dual_gram", worst, o.spectral_tol, "max spectral deviation / lambda_max: " + where);
}

SuiteResult verify_recurrences(const VerifyOptions& o) {
    double worst = 0.0;
    std::string where;
    auto track = [&](double e, std::string w) {
        if (e > worst) {
            worst = e;
            where = std::move(w);
        }
    };
    for (const auto& act : all_builtin()) {
        const auto shape = NetworkShape::uniform(4, 100, 3, 1.7, 0.3, act);
        const auto m = meanfield::solve_macro_state(shape);
        const int L = shape.depth();
        for (int l = 0; l < L; ++l) {
            track(std::abs(m.q[l + 1] - (shape.weight_variance(l + 1) * m.qhat[l] + shape.bias_variance(l + 1))),
                  fmt::format("{} q^{}", act.name(), l + 1));
            track(std::max(0.0, m.qhat_st[l] - m.qhat[l]), fmt::format("{} qhat_st > qhat", act.name()));
            track(std::max(0.0, m.qtil_st[l + 1] - m.qtil[l + 1]), fmt::format("{} qtil_st > qtil", act.name()));
        }
        track(std::abs(m.qtil[L] - 1.0) + std::abs(m.qtil_st[L] - 1.0), fmt::format("{} boundary", act.name()));

        const double T = 37.0, mu = 0.5;
        const auto s = meanfield::theory_stats(shape, m, T, mu);
        const double M = shape.base_width, C = shape.outputs(), a = shape.alpha();
        track(std::abs(s.mean_eig - C * s.kappa1 / M), act.name() + " m_lambda");
        track(std::abs(s.second_moment - C * a * ((T - 1) / T * s.kappa2 * s.kappa2 + s.kappa1 * s.kappa1 / T)),
              act.name() + " s_lambda");
        track(std::abs(s.max_eig - a * ((T - 1) / T * s.kappa2 + s.kappa1 / T) * M), act.name() + " lambda_max");
        track(std::abs(s.critical_lr - 2.0 * (1.0 + mu) / s.max_eig), act.name() + " eta_c");
    }
    return finish("recurrences", worst, o.identity_tol, worst > 0.0 ? "worst: " + where : "all identities exact");
}

SuiteResult verify_idx_roundtrip(const VerifyOptions& o) {
    data::IdxImages img{4, 3, 2, {}};
    data::IdxLabels lab;
    const GaussianSource u(o.seed, Stream::generic, 12);
    for (std::uint64_t i = 0; i < 24; ++i) img.pixels.push_back(static_cast<std::uint8_t>(u.uniform(i) * 256.0));
    for (std::uint64_t i = 0; i < 4; ++i) lab.labels.push_back(static_cast<std::uint8_t>(i * 3 % 10));
    const auto back = data::parse_idx_images(data::encode_idx_images(img));
    const auto lback = data::parse_idx_labels(data::encode_idx_labels(lab));
    const bool same = back.count == img.count && back.rows == img.rows && back.cols == img.cols &&
                      back.pixels == img.pixels && lback.labels == lab.labels;
    bool rejects = false;
    auto bad = data::encode_idx_images(img);
    bad[3] = 0x02;
    try {
        data::parse_idx_images(bad);
    } catch (const ParseError&) {
        rejects = true;
    }
    return finish("idx_roundtrip", same && rejects ? 0.0 : 1.0, 0.5,
                  same && rejects ? "bytes preserved, bad magic rejected" : "round trip mismatch");
}

VerifyReport run_verification(const VerifyOptions& options) {
    VerifyReport r;
    for (auto suite : {verify_kernels, verify_gradients, verify_dual_gram, verify_recurrences, verify_idx_roundtrip}) {
        try {
            r.suites.push_back(suite(options));
        } catch (const std::exception& e) {
            r.suites.push_back({"error", false, INFINITY, 0.0, e.what()});
        }
    }
    return r;
}

}  // namespace fimstat
