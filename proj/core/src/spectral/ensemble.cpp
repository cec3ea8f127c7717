#include "fimstat/spectral/ensemble.hpp"

#include "fimstat/data/sample_batch.hpp"
#include "fimstat/errors.hpp"
#include "fimstat/netsim/network.hpp"
#include "fimstat/parallel.hpp"

#include <fmt/format.h>
#include <fmt/os.h>

namespace fimstat::spectral {

namespace {

void dump_spectrum(const Eigen::VectorXd& eig, const meanfield::NetworkShape& shape, int samples, std::uint64_t seed,
                   const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    auto out = fmt::output_file(
        (dir / fmt::format("spectrum_M{}_T{}_C{}_seed{}.csv", shape.base_width, samples, shape.outputs(), seed))
            .string());
    out.print("index,eigenvalue\n");
    for (Eigen::Index i = eig.size(); i-- > 0;) out.print("{},{:.17g}\n", eig.size() - 1 - i, eig[i]);
}

}  // namespace

SeedResult run_seed(const meanfield::NetworkShape& shape, int samples, std::uint64_t seed, std::span<const double> ks,
                    const std::optional<std::filesystem::path>& spectra_dir) {
    const auto params = netsim::sample_network(shape, seed);
    const auto batch = data::gaussian_batch(samples, shape.input_width(), seed);
    const auto grads = netsim::backward(params, netsim::forward(params, batch.inputs));
    const auto gram = build_dual_gram(grads);
    const auto eig = eigenvalues(gram);
    if (spectra_dir) dump_spectrum(eig, shape, samples, seed, *spectra_dir);

    SeedResult r;
    r.seed = seed;
    r.normalised = stats_from_spectrum(eig, shape.theory_parameter_count(), ks);
    r.raw = r.normalised.renormalised(static_cast<double>(shape.parameter_count()));
    r.fisher_rao = fisher_rao_empirical(grads, params);

    const int T = samples;
    double diag = 0.0, off = 0.0;
    for (int k = 0; k < shape.outputs(); ++k) {
        const auto block = gram.matrix.block(static_cast<Eigen::Index>(k) * T, static_cast<Eigen::Index>(k) * T, T, T);
        const double tr = block.trace();
        diag += tr;
        off += block.sum() - tr;
    }
    r.diag_mean = diag / (static_cast<double>(shape.outputs()) * T);
    r.offdiag_mean = T > 1 ? off / (static_cast<double>(shape.outputs()) * T * (T - 1)) : 0.0;
    return r;
}

EnsembleSummary summarise(std::span<const SeedResult> seeds) {
    auto col = [&](auto get) {
        std::vector<double> v;
        v.reserve(seeds.size());
        for (const auto& s : seeds) v.push_back(get(s));
        return summarize(v);
    };
    EnsembleSummary s;
    s.mean_eig = col([](const SeedResult& r) { return r.normalised.mean_eig; });
    s.second_moment = col([](const SeedResult& r) { return r.normalised.second_moment; });
    s.max_eig = col([](const SeedResult& r) { return r.normalised.max_eig; });
    s.fisher_rao = col([](const SeedResult& r) { return r.fisher_rao; });
    s.raw_mean_eig = col([](const SeedResult& r) { return r.raw.mean_eig; });
    s.raw_second_moment = col([](const SeedResult& r) { return r.raw.second_moment; });
    s.diag_mean = col([](const SeedResult& r) { return r.diag_mean; });
    s.offdiag_mean = col([](const SeedResult& r) { return r.offdiag_mean; });
    return s;
}

EnsembleResult run_ensemble(const EnsembleConfig& config) {
    config.shape.validate();
    if (config.samples < 1 || config.seeds < 1) throw DomainError("ensemble needs T >= 1 and at least one seed");
    EnsembleResult res;
    res.config = config;
    res.theory = meanfield::predict(config.shape, config.samples);
    res.fisher_rao_theory = meanfield::fisher_rao_theory(config.shape, res.theory.kappa1);
    res.seeds.resize(static_cast<std::size_t>(config.seeds));
    parallel_for(res.seeds.size(), config.jobs, [&](std::size_t i) {
        res.seeds[i] = run_seed(config.shape, config.samples, config.first_seed + i, config.ks, config.spectra_dir);
    });
    res.summary = summarise(res.seeds);
    return res;
}

void write_ensemble_csv(std::span<const EnsembleResult> results, const std::filesystem::path& path) {
    auto out = fmt::output_file(path.string());
    out.print("seed,M,T,C,activation,m_lambda,s_lambda,lambda_max,fr_norm,theory_m_lambda,theory_s_lambda,"
              "theory_lambda_max,theory_fr_uniform,raw_m_lambda,raw_s_lambda");
    if (!results.empty())
        for (double k : results.front().config.ks) out.print(",n_ge_{:g}", k);
    out.print("\n");
    for (const auto& r : results) {
        const auto& sh = r.config.shape;
        for (const auto& s : r.seeds) {
            out.print("{},{},{},{},{},{:.10g},{:.10g},{:.10g},{:.10g},{:.10g},{:.10g},{:.10g},{:.10g},{:.10g},{:.10g}",
                      s.seed, sh.base_width, r.config.samples, sh.outputs(), sh.activation(1).name(),
                      s.normalised.mean_eig, s.normalised.second_moment, s.normalised.max_eig, s.fisher_rao,
                      r.theory.mean_eig, r.theory.second_moment, r.theory.max_eig,
                      r.fisher_rao_theory.uniform_width_value, s.raw.mean_eig, s.raw.second_moment);
            for (const auto& [k, n] : s.normalised.eigencounts) out.print(",{}", n);
            out.print("\n");
        }
    }
}

void write_summary_csv(std::span<const EnsembleResult> results, const std::filesystem::path& path) {
    auto out = fmt::output_file(path.string());
    out.print("M,T,C,activation,statistic,mean,stderr,stddev,theory\n");
    for (const auto& r : results) {
        const auto& sh = r.config.shape;
        auto row = [&](const char* name, const Summary& s, double theory) {
            out.print("{},{},{},{},{},{:.10g},{:.10g},{:.10g},{:.10g}\n", sh.base_width, r.config.samples,
                      sh.outputs(), sh.activation(1).name(), name, s.mean, s.stderr_mean, s.stddev, theory);
        };
        const double alpha_m = sh.alpha() * sh.base_width;
        const double T = r.config.samples;
        row("m_lambda", r.summary.mean_eig, r.theory.mean_eig);
        row("s_lambda", r.summary.second_moment, r.theory.second_moment);
        row("lambda_max", r.summary.max_eig, r.theory.max_eig);
        row("fr_norm", r.summary.fisher_rao, r.fisher_rao_theory.uniform_width_value);
        row("dual_diag", r.summary.diag_mean, alpha_m * r.theory.kappa1 / T);
        row("dual_offdiag", r.summary.offdiag_mean, alpha_m * r.theory.kappa2 / T);
    }
}

}  // namespace fimstat::spectral
