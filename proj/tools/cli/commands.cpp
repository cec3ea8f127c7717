#include "commands.hpp"

#include "fimstat/data/idx.hpp"
#include "fimstat/errors.hpp"
#include "fimstat/meanfield/theory.hpp"
#include "fimstat/spectral/checks.hpp"
#include "fimstat/spectral/ensemble.hpp"
#include "fimstat/trainer/sweep.hpp"
#include "fimstat/verify.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <fmt/ranges.h>

#include <cmath>
#include <fstream>
#include <limits>

namespace fimstat::cli {

using meanfield::NetworkShape;
using nlohmann::json;

namespace {

std::vector<int> int_list(const RunConfig& cfg, const std::string& key) {
    const auto& v = cfg.at(key);
    if (v.is_number()) return {v.get<int>()};
    return cfg.get<std::vector<int>>(key);
}

double samples_value(const json& v) {
    if (v.is_string()) {
        if (v == "inf") return std::numeric_limits<double>::infinity();
        throw UsageError("samples must be a number or \"inf\"");
    }
    return v.get<double>();
}

meanfield::KernelMethod method_from(const std::string& s) {
    if (s == "automatic") return meanfield::KernelMethod::automatic;
    if (s == "analytic") return meanfield::KernelMethod::analytic;
    if (s == "quadrature") return meanfield::KernelMethod::quadrature;
    throw UsageError("method must be automatic, analytic or quadrature");
}

void ensure_dir(const std::filesystem::path& p) { std::filesystem::create_directories(p); }

std::string fmt_stat(const Summary& s) { return fmt::format("{:.6g} +- {:.2g}", s.mean, s.stderr_mean); }

}  // namespace

NetworkShape shape_from_config(const RunConfig& cfg, int width) {
    const auto act = meanfield::Activation::from_name(cfg.get<std::string>("activation"), cfg.get<double>("slope"));
    const double sw2 = cfg.get<double>("sigma_w2"), sb2 = cfg.get<double>("sigma_b2");
    const int outputs = cfg.get<int>("outputs");
    if (cfg.has("coefficients")) {
        auto shape = NetworkShape::from_coefficients(width, cfg.get<std::vector<double>>("coefficients"), outputs, sw2,
                                                     sb2, act);
        if (cfg.has("input_width")) {
            shape.widths.front() = cfg.get<int>("input_width");
            shape.validate();
        }
        return shape;
    }
    std::optional<int> m0;
    if (cfg.has("input_width")) m0 = cfg.get<int>("input_width");
    return NetworkShape::uniform(cfg.get<int>("depth"), width, outputs, sw2, sb2, act, m0);
}

int cmd_theory(const RunConfig& cfg, const CommonOptions& opt, std::ostream& out) {
    const auto shape = shape_from_config(cfg, cfg.get<int>("width"));
    const double T = samples_value(cfg.at("samples"));
    const double mu = cfg.get<double>("momentum");
    const auto macro = meanfield::solve_macro_state(shape, cfg.get<double>("qhat0"), cfg.get<double>("qhat_st0"),
                                                    method_from(cfg.get<std::string>("method")));
    const auto s = meanfield::theory_stats(shape, macro, T, mu);
    const auto hd = meanfield::high_dim_output_bounds(s, shape);

    fmt::print(out, "activation {}  L={} M={} C={} alpha={:g}  (sigma_w2, sigma_b2)=({:g}, {:g})  T={}\n",
               shape.activation(1).name(), shape.depth(), shape.base_width, shape.outputs(), shape.alpha(),
               shape.weight_variance(1), shape.bias_variance(1), T);
    if (shape.activation(1).kind() == meanfield::ActivationKind::erf)
        fmt::print(out, "note: erf is evaluated in closed form and stands in for tanh\n");
    fmt::print(out, "{:>5} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12}\n", "l", "qhat", "qhat_st", "q", "q_st", "qtil",
               "qtil_st");
    for (int l = 0; l <= shape.depth(); ++l)
        fmt::print(out, "{:>5} {:>12.6g} {:>12.6g} {:>12.6g} {:>12.6g} {:>12.6g} {:>12.6g}\n", l, macro.qhat[l],
                   macro.qhat_st[l], macro.q[l], macro.q_st[l], macro.qtil[l], macro.qtil_st[l]);
    fmt::print(out, "kappa1       {:.10g}\nkappa2       {:.10g}\nm_lambda     {:.10g}\ns_lambda     {:.10g}\n"
                    "lambda_max   {:.10g}\neta_c        {:.10g}  (mu = {:g})\nfr_bound     {:.10g}\nfr_uniform   {:.10g}\n",
               s.kappa1, s.kappa2, s.mean_eig, s.second_moment, s.max_eig, s.critical_lr, mu, s.fisher_rao_bound,
               s.fisher_rao_uniform);
    if (!s.leading_order_reliable)
        fmt::print(out, "warning: kappa2 = 0; s_lambda and lambda_max are only the vanishing leading term\n");

    json counts = json::array();
    for (double k : cfg.get<std::vector<double>>("ks")) {
        const double b = meanfield::eigencount_bound(s, shape, k, T);
        fmt::print(out, "N(lambda >= {:g}) <= {:.6g}\n", k, b);
        counts.push_back({{"k", k}, {"bound", std::isfinite(b) ? json(b) : json("inf")}});
    }
    auto num = [](double v) { return std::isfinite(v) ? json(v) : json("inf"); };
    const json doc{{"config", cfg.values},
                   {"alpha", shape.alpha()},
                   {"macro",
                    {{"qhat", macro.qhat}, {"qhat_st", macro.qhat_st}, {"q", macro.q}, {"q_st", macro.q_st},
                     {"qtil", macro.qtil}, {"qtil_st", macro.qtil_st}}},
                   {"kappa1", s.kappa1},
                   {"kappa2", s.kappa2},
                   {"m_lambda", s.mean_eig},
                   {"s_lambda", s.second_moment},
                   {"lambda_max", s.max_eig},
                   {"eta_c", s.critical_lr},
                   {"fisher_rao_bound", s.fisher_rao_bound},
                   {"fisher_rao_uniform", s.fisher_rao_uniform},
                   {"leading_order_reliable", s.leading_order_reliable},
                   {"high_dim",
                    {{"mean", hd.mean},
                     {"s_range", {num(hd.second_moment.lo), num(hd.second_moment.hi)}},
                     {"lmax_range", {num(hd.max_eig.lo), num(hd.max_eig.hi)}}}},
                   {"eigencount_bounds", counts}};
    ensure_dir(opt.out);
    // NaN entries of the unused layer slots serialise as null.
    std::ofstream(opt.out / "theory.json") << doc.dump(2) << '\n';
    return 0;
}

int cmd_spectrum(const RunConfig& cfg, const CommonOptions& opt, std::ostream& out) {
    const auto widths = int_list(cfg, "widths");
    const auto samples = int_list(cfg, "samples");
    ensure_dir(opt.out);
    std::vector<spectral::EnsembleResult> results;
    fmt::print(out, "{:>6} {:>6} {:>26} {:>12} {:>26} {:>12} {:>26} {:>12} {:>22} {:>10}\n", "M", "T", "m_lambda",
               "theory", "s_lambda", "theory", "lambda_max", "theory", "fr_norm", "markov");
    for (int m : widths) {
        for (int t : samples) {
            spectral::EnsembleConfig ec;
            ec.shape = shape_from_config(cfg, m);
            ec.samples = t;
            ec.seeds = cfg.get<int>("seeds");
            ec.first_seed = opt.seed.value_or(cfg.get<std::uint64_t>("first_seed"));
            ec.ks = cfg.get<std::vector<double>>("ks");
            ec.jobs = opt.jobs;
            if (cfg.get<bool>("dump_spectra")) ec.spectra_dir = opt.out / "spectra";
            auto r = spectral::run_ensemble(ec);
            const auto mk = spectral::markov_check(r);
            fmt::print(out, "{:>6} {:>6} {:>26} {:>12.6g} {:>26} {:>12.6g} {:>26} {:>12.6g} {:>22} {:>10}\n", m, t,
                       fmt_stat(r.summary.mean_eig), r.theory.mean_eig, fmt_stat(r.summary.second_moment),
                       r.theory.second_moment, fmt_stat(r.summary.max_eig), r.theory.max_eig,
                       fmt_stat(r.summary.fisher_rao), fmt::format("{}/{}", mk.violations, mk.checks));
            results.push_back(std::move(r));
        }
    }
    spectral::write_ensemble_csv(results, opt.out / "spectrum.csv");
    spectral::write_summary_csv(results, opt.out / "spectrum_summary.csv");
    fmt::print(out, "wrote {} and {}\n", (opt.out / "spectrum.csv").string(),
               (opt.out / "spectrum_summary.csv").string());
    return 0;
}

int cmd_sweep(const RunConfig& cfg, const CommonOptions& opt, std::ostream& out) {
    trainer::SweepConfig sc;
    sc.depth = cfg.get<int>("depth");
    sc.outputs = cfg.get<int>("outputs");
    sc.sigma_w2 = cfg.get<double>("sigma_w2");
    sc.sigma_b2 = cfg.get<double>("sigma_b2");
    sc.activation = meanfield::Activation::from_name(cfg.get<std::string>("activation"), cfg.get<double>("slope"));
    if (cfg.has("input_width")) sc.input_width = cfg.get<int>("input_width");
    sc.widths = int_list(cfg, "widths");
    sc.etas = trainer::log_grid(cfg.get<double>("eta_min"), cfg.get<double>("eta_max"), cfg.get<int>("eta_points"));
    sc.trials = cfg.get<int>("trials");
    sc.samples = cfg.get<int>("samples");
    sc.train.mu = cfg.get<double>("momentum");
    sc.train.steps = cfg.get<int>("steps");
    sc.train.divergence_threshold = cfg.get<double>("divergence_threshold");
    sc.seed = opt.seed.value_or(cfg.get<std::uint64_t>("seed"));
    sc.jobs = opt.jobs;
    if (cfg.has("qhat_st0")) sc.qhat_st0 = cfg.get<double>("qhat_st0");
    if (cfg.has("coefficients")) throw UsageError("sweep uses uniform widths; 'coefficients' is not supported");

    const bool dry = opt.dry_run || cfg.get<bool>("dry_run");
    const std::string dataset = cfg.get<std::string>("dataset");
    std::optional<data::SampleBatch> data;
    if (dataset == "idx") {
        if (!cfg.has("images") || !cfg.has("labels")) throw UsageError("dataset 'idx' needs 'images' and 'labels'");
        sc.train.batch = cfg.get<int>("batch");
        if (!dry) {
            data = data::load_idx(cfg.get<std::string>("images"), cfg.get<std::string>("labels"));
            if (const int n = cfg.get<int>("max_samples"); n > 0 && n < data->size()) *data = data->slice(0, n);
        }
    } else if (dataset != "gaussian") {
        throw UsageError("dataset must be 'gaussian' or 'idx'");
    }

    if (dry) {
        fmt::print(out, "dry run: {} widths x {} learning rates x {} trials = {} runs ({} data)\n", sc.widths.size(),
                   sc.etas.size(), sc.trials, sc.widths.size() * sc.etas.size() * sc.trials, dataset);
        fmt::print(out, "widths: {}\n", fmt::join(sc.widths, " "));
        fmt::print(out, "etas:   {}\n", fmt::join(sc.etas, " "));
        if (dataset == "gaussian")
            for (int w : sc.widths)
                fmt::print(out, "M={:>5}  eta_c={:.6g}\n", w,
                           meanfield::predict(trainer::sweep_shape(sc, w), sc.samples, sc.train.mu).critical_lr);
        return 0;
    }

    const auto res = data ? trainer::dataset_sweep(sc, *data, cfg.get<int>("epochs")) : trainer::sweep(sc);
    ensure_dir(opt.out);
    trainer::write_sweep_csv(res, opt.out / "sweep.csv");
    trainer::write_plot_data(res, opt.out / "plot_data.json");
    fmt::print(out, "{:>6} {:>14} {:>14} {:>10}\n", "M", "eta_c", "boundary", "ratio");
    for (std::size_t i = 0; i < res.widths.size(); ++i)
        fmt::print(out, "{:>6} {:>14.6g} {:>14.6g} {:>10.3g}\n", res.widths[i], res.eta_c[i], res.boundary[i],
                   res.boundary[i] / res.eta_c[i]);
    fmt::print(out, "wrote {} and {}\n", (opt.out / "sweep.csv").string(), (opt.out / "plot_data.json").string());
    return 0;
}

int cmd_verify(const RunConfig& cfg, const CommonOptions& opt, std::ostream& out) {
    VerifyOptions vo;
    vo.seed = opt.seed.value_or(cfg.get<std::uint64_t>("seed"));
    vo.kernel_samples = cfg.get<int>("kernel_samples");
    vo.kernel_tol = cfg.get<double>("kernel_tol");
    vo.fd_step = cfg.get<double>("fd_step");
    vo.gradient_tol = cfg.get<double>("gradient_tol");
    vo.spectral_tol = cfg.get<double>("spectral_tol");
    vo.identity_tol = cfg.get<double>("identity_tol");
    const auto report = run_verification(vo);
    for (const auto& s : report.suites)
        fmt::print(out, "{} {:<14} {:.3e} (tol {:.1e})  {}\n", s.passed ? "PASS" : "FAIL", s.name, s.metric,
                   s.tolerance, s.detail);
    return report.passed() ? 0 : 1;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Mean-field statistics of the Fisher information of random deep networks"};
    app.require_subcommand(1);
    CommonOptions opt;
    std::uint64_t seed = 0;
    std::string out_dir = ".";
    std::string config_path;

    std::vector<CLI::App*> subs;
    for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
             {"theory", "evaluate the mean-field predictions"},
             {"spectrum", "ensemble spectra of the dual Gram matrix versus theory"},
             {"sweep", "(M, eta) training grid against the critical learning rate"},
             {"verify", "run the built-in consistency suites"}}) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "JSON config file");
        sub->add_option("--set", opt.sets, "override a config key, KEY=VALUE (repeatable)");
        sub->add_option("--jobs", opt.jobs, "worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--seed", seed, "base seed");
        sub->add_option("--out", out_dir, "output directory");
        if (name == "sweep") sub->add_flag("--dry-run", opt.dry_run, "print the grid without training");
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    for (auto* sub : subs) {
        if (!sub->parsed()) continue;
        const std::string name = sub->get_name();
        if (sub->count("--seed")) opt.seed = seed;
        if (!config_path.empty()) opt.config = config_path;
        opt.out = out_dir;
        try {
            const auto cfg = make_config(name, opt.config, opt.sets);
            if (name == "theory") return cmd_theory(cfg, opt, out);
            if (name == "spectrum") return cmd_spectrum(cfg, opt, out);
            if (name == "sweep") return cmd_sweep(cfg, opt, out);
            return cmd_verify(cfg, opt, out);
        } catch (const UsageError& e) {
            fmt::print(err, "usage error: {}\n", e.what());
            return 2;
        } catch (const std::exception& e) {
            fmt::print(err, "error: {}\n", e.what());
            return 1;
        }
    }
    return 2;
}

}  // namespace fimstat::cli
