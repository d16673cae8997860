#include "lmcts/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "lmcts/core/error.hpp"
#include "lmcts/core/linalg.hpp"
#include "lmcts/harness/results.hpp"
#include "lmcts/models/loss.hpp"
#include "lmcts/sampler/lmc.hpp"

namespace lmcts {

ExperimentConfig apply_options(ExperimentConfig cfg, const CliOptions& opt)
{
    if (opt.out) {
        cfg.run.out = *opt.out;
    }
    if (opt.jobs) {
        if (*opt.jobs == 0) {
            throw ConfigError("--jobs: must be at least 1");
        }
        cfg.run.jobs = *opt.jobs;
    }
    for (auto& s : cfg.run.seeds) {
        s += opt.seed_offset;
    }
    return cfg;
}

namespace {

Metadata config_metadata(const ExperimentConfig& cfg)
{
    Metadata meta;
    for (const auto& [k, v] : config_entries(cfg)) {
        meta["config." + k] = v;
    }
    return meta;
}

BatchResult simulate_to(const ExperimentConfig& cfg, const std::string& tag, std::ostream& err)
{
    const EnvFactory env(cfg.env);
    BatchResult res = run_many(cfg.agent, env, cfg.run.horizon, cfg.run.seeds, cfg.run.jobs);
    Metadata meta = config_metadata(cfg);
    for (const auto& [k, v] : env.make(cfg.run.seeds.front())->describe()) {
        meta[k] = v;
    }
    write_results(cfg.run.out, tag, res, meta);
    for (std::size_t i = 0; i < res.failed_seeds.size(); ++i) {
        err << "warning: " << res.failures[i] << '\n';
    }
    for (const auto& r : res.records) {
        if (r.truncated) {
            err << "warning: seed " << r.seed << " stopped after " << r.rounds()
                << " rounds: environment exhausted\n";
        }
    }
    return res;
}

std::string entry_name(const char* what, Eigen::Index j, Eigen::Index k = -1)
{
    std::ostringstream s;
    s << what << '[' << j;
    if (k >= 0) {
        s << ',' << k;
    }
    s << ']';
    return s.str();
}

double z_score(double diff, double se)
{
    if (se == 0.0) {
        return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return diff / se;
}

} // namespace

DiagnoseReport run_diagnose(const DiagnoseConfig& cfg)
{
    if (cfg.dim == 0 || cfg.rounds == 0 || cfg.chains < 2) {
        throw ConfigError("diagnose: need d >= 1, rounds >= 1, chains >= 2");
    }
    if (!(cfg.beta > 0.0) || !(cfg.eta_scale > 0.0 && cfg.eta_scale < 0.5) || !(cfg.threshold > 0.0)) {
        throw ConfigError("diagnose: need beta > 0, 0 < eta_scale < 0.5, threshold > 0");
    }
    const auto d = static_cast<Eigen::Index>(cfg.dim);

    // frozen history: unit arms, rewards from a fixed linear model
    RngStream data_rng(cfg.seed, streams::env_setup);
    Vector theta_star(d);
    data_rng.fill_normal(as_span(theta_star));
    theta_star.normalize();
    std::vector<History> histories;
    std::vector<LmcSchedule> schedules;
    History h(cfg.dim, 1.0);
    for (std::size_t i = 0; i < cfg.rounds; ++i) {
        histories.push_back(h);
        LmcSchedule s;
        s.eta = cfg.eta_scale / linalg::lambda_max_power(h.gram());
        s.beta = cfg.beta;
        s.epoch_length = cfg.epoch_length;
        schedules.push_back(s);
        Vector x(d);
        data_rng.fill_normal(as_span(x));
        x.normalize();
        h.observe(x, x.dot(theta_star) + data_rng.normal());
    }

    DiagnoseReport rep;
    std::vector<LmcSchedule> oracle_sched = schedules;
    if (cfg.mismatch) {
        for (auto& s : oracle_sched) {
            s.eta *= 0.5;
        }
    }
    rep.oracle = closed_form_law(histories, oracle_sched, Vector::Zero(d));

    const RewardModel model = LinearModel{cfg.dim};
    LangevinSampler sampler;
    RngStream chain_rng(cfg.seed, streams::agent);
    Vector sum = Vector::Zero(d);
    Matrix outer = Matrix::Zero(d, d);
    for (std::size_t c = 0; c < cfg.chains; ++c) {
        ChainState state{Vector::Zero(d), 0, 0};
        for (std::size_t i = 0; i < cfg.rounds; ++i) {
            const LossSpec spec(model, histories[i], 1.0);
            sampler.run_epoch(state, spec, schedules[i], chain_rng);
        }
        sum += state.theta;
        outer.noalias() += state.theta * state.theta.transpose();
    }
    const double n = static_cast<double>(cfg.chains);
    rep.empirical_mean = sum / n;
    rep.empirical_cov = (outer - n * rep.empirical_mean * rep.empirical_mean.transpose()) / (n - 1.0);

    const Matrix& s = rep.empirical_cov;
    for (Eigen::Index j = 0; j < d; ++j) {
        const double se = std::sqrt(std::max(0.0, s(j, j)) / n);
        const double z = std::abs(z_score(rep.empirical_mean[j] - rep.oracle.mean[j], se));
        rep.max_z_mean = std::max(rep.max_z_mean, z);
        if (!(z <= cfg.threshold)) {
            rep.offending.push_back(entry_name("mean", j));
        }
    }
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index k = j; k < d; ++k) {
            const double se = std::sqrt(std::max(0.0, s(j, j) * s(k, k) + s(j, k) * s(j, k)) / n);
            const double z = std::abs(z_score(s(j, k) - rep.oracle.covariance(j, k), se));
            rep.max_z_cov = std::max(rep.max_z_cov, z);
            if (!(z <= cfg.threshold)) {
                rep.offending.push_back(entry_name("cov", j, k));
            }
        }
    }
    rep.passed = rep.offending.empty();
    return rep;
}

int cmd_simulate(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err)
{
    const BatchResult res = simulate_to(cfg, cfg.run.tag, err);
    out << "wrote " << (std::filesystem::path(cfg.run.out) / (cfg.run.tag + "_curve.csv")).string()
        << " (final mean regret " << format_number(res.agg.mean.back()) << " over " << res.records.size()
        << " seeds)\n";
    return exit_code::ok;
}

int cmd_diagnose(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err)
{
    const DiagnoseReport rep = run_diagnose(cfg.diagnose);
    out << "max |z| mean = " << format_number(rep.max_z_mean) << '\n';
    out << "max |z| cov = " << format_number(rep.max_z_cov) << '\n';
    out << "threshold = " << format_number(cfg.diagnose.threshold) << '\n';
    if (!rep.passed) {
        err << "diagnose: entries beyond threshold:";
        for (const auto& e : rep.offending) {
            err << ' ' << e;
        }
        err << '\n';
        out << "FAIL\n";
        return exit_code::diagnostic;
    }
    out << "PASS\n";
    return exit_code::ok;
}

int cmd_sweep(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err)
{
    if (cfg.grid.empty()) {
        throw ConfigError("grid: sweep needs at least one [grid] entry");
    }
    std::size_t cells = 1;
    for (const auto& axis : cfg.grid) {
        cells *= axis.values.size();
    }
    std::vector<SweepRow> rows;
    for (std::size_t cell = 0; cell < cells; ++cell) {
        ExperimentConfig c = cfg;
        SweepRow row;
        row.cell = cell;
        std::size_t rest = cell;
        // last axis varies fastest
        std::vector<std::size_t> pick(cfg.grid.size());
        for (std::size_t a = cfg.grid.size(); a-- > 0;) {
            pick[a] = rest % cfg.grid[a].values.size();
            rest /= cfg.grid[a].values.size();
        }
        for (std::size_t a = 0; a < cfg.grid.size(); ++a) {
            set_field(c, cfg.grid[a].key, cfg.grid[a].values[pick[a]]);
            row.values.push_back(cfg.grid[a].values[pick[a]]);
        }
        c.agent.validate();
        c.env.validate();
        const BatchResult res = simulate_to(c, cfg.run.tag + "_cell" + std::to_string(cell), err);
        row.final_mean = res.agg.mean.back();
        row.final_stderr = res.agg.std_error.back();
        rows.push_back(row);
        out << "cell " << cell << ": final mean regret " << format_number(row.final_mean) << '\n';
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const SweepRow& a, const SweepRow& b) { return a.final_mean < b.final_mean; });

    const auto file = std::filesystem::path(cfg.run.out) / (cfg.run.tag + "_summary.csv");
    std::ofstream s(file, std::ios::binary | std::ios::trunc);
    if (!s) {
        throw Error("cannot write " + file.string());
    }
    s << "rank,cell";
    for (const auto& axis : cfg.grid) {
        s << ',' << axis.key;
    }
    s << ",final_mean_cum_regret,final_stderr\n";
    for (std::size_t r = 0; r < rows.size(); ++r) {
        s << r + 1 << ',' << rows[r].cell;
        for (const auto& v : rows[r].values) {
            s << ',' << v;
        }
        s << ',' << format_number(rows[r].final_mean) << ',' << format_number(rows[r].final_stderr) << '\n';
    }
    if (!s) {
        throw Error("write failed: " + file.string());
    }
    out << "best cell " << rows.front().cell << " (final mean regret " << format_number(rows.front().final_mean)
        << "), summary in " << file.string() << '\n';
    return exit_code::ok;
}

int run_command(const std::string& command, const std::string& path, const CliOptions& opt, std::ostream& out,
                std::ostream& err)
{
    ExperimentConfig cfg;
    try {
        if (command != "simulate" && command != "diagnose" && command != "sweep") {
            throw ConfigError("unknown subcommand '" + command + "' (simulate, diagnose, sweep)");
        }
        cfg = apply_options(load_config(path), opt);
        if (command == "simulate" || command == "sweep") {
            EnvFactory probe(cfg.env);
        }
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_code::config;
    } catch (const std::exception& e) {
        err << "config error: " << e.what() << '\n';
        return exit_code::config;
    }
    try {
        if (command == "simulate") {
            return cmd_simulate(cfg, out, err);
        }
        if (command == "diagnose") {
            return cmd_diagnose(cfg, out, err);
        }
        return cmd_sweep(cfg, out, err);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_code::config;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::runtime;
    }
}

} // namespace lmcts
