#include "fimstat/trainer/sweep.hpp"

#include "fimstat/errors.hpp"
#include "fimstat/meanfield/theory.hpp"
#include "fimstat/parallel.hpp"
#include "fimstat/rng.hpp"
#include "fimstat/trainer/teacher_student.hpp"

#include <fmt/format.h>
#include <fmt/os.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <limits>

namespace fimstat::trainer {

namespace {

using RunFn = std::function<Trajectory(const meanfield::NetworkShape&, const TrainConfig&, int width, int trial)>;

SweepResult run_grid(const SweepConfig& config, const std::vector<double>& eta_c, const RunFn& run) {
    if (config.widths.empty() || config.etas.empty() || config.trials < 1)
        throw DomainError("sweep needs at least one width, one learning rate and one trial");
    const std::size_t nw = config.widths.size(), ne = config.etas.size(), nt = static_cast<std::size_t>(config.trials);

    SweepResult res;
    res.widths = config.widths;
    res.etas = config.etas;
    res.eta_c = eta_c;
    res.cells.resize(nw * ne * nt);
    std::vector<meanfield::NetworkShape> shapes;
    for (int w : config.widths) shapes.push_back(sweep_shape(config, w));

    parallel_for(res.cells.size(), config.jobs, [&](std::size_t i) {
        const std::size_t wi = i / (ne * nt), ei = (i / nt) % ne, ti = i % nt;
        TrainConfig tc = config.train;
        tc.eta = config.etas[ei];
        const auto tr = run(shapes[wi], tc, config.widths[wi], static_cast<int>(ti));
        auto& c = res.cells[i];
        c.width = config.widths[wi];
        c.eta = tc.eta;
        c.trial = static_cast<int>(ti);
        c.final_loss = tr.final_loss();
        c.diverged = tr.diverged;
        c.steps_run = tr.steps_run;
        c.eta_c = eta_c[wi];
    });

    res.mean_loss.assign(nw, std::vector<double>(ne, 0.0));
    res.diverged.assign(nw, std::vector<bool>(ne, false));
    res.boundary.assign(nw, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t wi = 0; wi < nw; ++wi) {
        for (std::size_t ei = 0; ei < ne; ++ei) {
            double sum = 0.0;
            bool any = false;
            for (std::size_t ti = 0; ti < nt; ++ti) {
                const auto& c = res.cells[(wi * ne + ei) * nt + ti];
                sum += c.final_loss;
                any = any || c.diverged;
            }
            res.mean_loss[wi][ei] = sum / static_cast<double>(nt);
            res.diverged[wi][ei] = any;
            if (any && !(res.boundary[wi] <= config.etas[ei])) res.boundary[wi] = config.etas[ei];
        }
    }
    return res;
}

}  // namespace

std::vector<double> log_grid(double lo, double hi, int n) {
    if (!(lo > 0.0 && hi >= lo) || n < 1) throw DomainError("log grid needs 0 < lo <= hi and n >= 1");
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        g[static_cast<std::size_t>(i)] = n == 1 ? lo : lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    return g;
}

meanfield::NetworkShape sweep_shape(const SweepConfig& config, int width) {
    return meanfield::NetworkShape::uniform(config.depth, width, config.outputs, config.sigma_w2, config.sigma_b2,
                                            config.activation, config.input_width);
}

SweepResult sweep(const SweepConfig& config) {
    std::vector<double> eta_c;
    for (int w : config.widths)
        eta_c.push_back(meanfield::predict(sweep_shape(config, w), config.samples, config.train.mu).critical_lr);
    return run_grid(config, eta_c, [&](const meanfield::NetworkShape& shape, const TrainConfig& tc, int width, int trial) {
        const std::uint64_t cell = mix_seed(config.seed, static_cast<std::uint64_t>(width));
        const auto t = static_cast<std::uint64_t>(trial);
        return teacher_student_run(shape, mix_seed(cell, 3 * t), mix_seed(cell, 3 * t + 1), tc, config.samples,
                                   mix_seed(cell, 3 * t + 2));
    });
}

SweepResult dataset_sweep(const SweepConfig& config, const data::SampleBatch& dataset, int epochs) {
    const int batch = config.train.batch > 0 ? config.train.batch : static_cast<int>(dataset.size());
    const double qst = config.qhat_st0.value_or(data::mean_pairwise_overlap(dataset.inputs));
    SweepConfig cfg = config;
    cfg.input_width = static_cast<int>(dataset.dimension());
    cfg.outputs = static_cast<int>(dataset.targets.cols());
    std::vector<double> eta_c;
    for (int w : cfg.widths)
        eta_c.push_back(meanfield::predict(sweep_shape(cfg, w), batch, cfg.train.mu, 1.0, qst).critical_lr);
    return run_grid(cfg, eta_c, [&](const meanfield::NetworkShape& shape, const TrainConfig& tc, int width, int trial) {
        const std::uint64_t s = mix_seed(mix_seed(cfg.seed, static_cast<std::uint64_t>(width)),
                                         static_cast<std::uint64_t>(trial));
        return sgd_dataset_run(shape, dataset, tc, s, epochs);
    });
}

void write_sweep_csv(const SweepResult& result, const std::filesystem::path& path) {
    auto out = fmt::output_file(path.string());
    out.print("M,eta,trial,final_loss,diverged,steps_run,eta_c_theory\n");
    for (const auto& c : result.cells)
        out.print("{},{:.10g},{},{:.10g},{},{},{:.10g}\n", c.width, c.eta, c.trial, c.final_loss, c.diverged ? 1 : 0,
                  c.steps_run, c.eta_c);
}

void write_plot_data(const SweepResult& result, const std::filesystem::path& path) {
    auto finite_or_null = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
    nlohmann::json loss = nlohmann::json::array(), div = nlohmann::json::array(), boundary = nlohmann::json::array();
    for (std::size_t w = 0; w < result.widths.size(); ++w) {
        nlohmann::json row = nlohmann::json::array(), drow = nlohmann::json::array();
        for (std::size_t e = 0; e < result.etas.size(); ++e) {
            row.push_back(finite_or_null(result.mean_loss[w][e]));
            drow.push_back(static_cast<bool>(result.diverged[w][e]));
        }
        loss.push_back(row);
        div.push_back(drow);
        boundary.push_back(finite_or_null(result.boundary[w]));
    }
    const nlohmann::json doc{{"widths", result.widths}, {"etas", result.etas},   {"mean_loss", loss},
                             {"diverged", div},         {"eta_c", result.eta_c}, {"boundary", boundary}};
    std::ofstream(path) << doc.dump(2) << '\n';
}

}  // namespace fimstat::trainer
