// Acceptance checks. Each criterion prints one PASS/FAIL line; the exit
// status is nonzero when any selected criterion fails.
//
//   acceptance [--criterion ID] [--out DIR]
//
// IDs are 1..9 plus 2c (the companion check of criterion 2 against the
// (2 beta)^-1 V^-1 limit).

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "lmcts/agents/factory.hpp"
#include "lmcts/core/linalg.hpp"
#include "lmcts/core/rng.hpp"
#include "lmcts/harness/results.hpp"
#include "lmcts/harness/runner.hpp"
#include "lmcts/models/loss.hpp"
#include "lmcts/sampler/closed_form.hpp"
#include "lmcts/sampler/lmc.hpp"

using namespace lmcts;
namespace fs = std::filesystem;

namespace {

// ---- pinned tolerances and budgets ----
constexpr double kZLimit = 4.0;              // criterion 1, Monte-Carlo standard errors
constexpr std::size_t kChains = 100000;      // criterion 1
constexpr double kLimitRelError = 0.05;      // criterion 2
constexpr double kFdRelTol = 1e-4;           // criterion 3
constexpr double kFdFloor = 1e-3;            // criterion 3, denominator floor
constexpr int kFdChecks = 200;               // criterion 3, per family
constexpr double kLinTsFactor = 1.5;         // criterion 4
constexpr double kEpsGreedyFactor = 0.8;     // criterion 4
constexpr double kSublinearRatio = 0.5;      // criterion 4
constexpr double kGlmTslFactor = 1.5;        // criterion 5
constexpr double kSeparation = 2.0;          // criterion 6
constexpr double kSpeedup = 2.0;             // criterion 7
constexpr double kUniformSigmas = 3.0;       // criterion 8

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int precision = 4)
{
    std::ostringstream s;
    s << std::setprecision(precision) << v;
    return s.str();
}

std::vector<std::uint64_t> seed_range(std::uint64_t n)
{
    std::vector<std::uint64_t> s(n);
    std::iota(s.begin(), s.end(), std::uint64_t{1});
    return s;
}

// Unit-norm arms, rewards from a fixed unit theta* plus N(0, 1) noise.
std::vector<History> growing_histories(std::size_t d, std::size_t rounds, std::uint64_t seed)
{
    RngStream rng(seed, 99);
    Vector theta_star(static_cast<Eigen::Index>(d));
    rng.fill_normal(as_span(theta_star));
    theta_star.normalize();
    std::vector<History> out;
    History h(d, 1.0);
    for (std::size_t i = 0; i < rounds; ++i) {
        out.push_back(h);
        Vector x(static_cast<Eigen::Index>(d));
        rng.fill_normal(as_span(x));
        x.normalize();
        h.observe(x, x.dot(theta_star) + rng.normal());
    }
    out.push_back(h);
    return out;
}

double eigen_lambda_max(const Matrix& v)
{
    return Eigen::SelfAdjointEigenSolver<Matrix>(v).eigenvalues().maxCoeff();
}

// Step-by-step moment recursion of the linear LMC chain:
//   mu <- mu - 2 eta (V mu - b),  S <- A S A + (2 eta / beta) I.
GaussianLaw moment_recursion(std::span<const History> hs, std::span<const LmcSchedule> ss, const Vector& theta0)
{
    const Eigen::Index d = theta0.size();
    GaussianLaw law{theta0, Matrix::Zero(d, d)};
    for (std::size_t i = 0; i < hs.size(); ++i) {
        const Matrix a = Matrix::Identity(d, d) - 2.0 * ss[i].eta * hs[i].gram();
        for (std::size_t k = 0; k < ss[i].epoch_length; ++k) {
            law.mean = a * law.mean + 2.0 * ss[i].eta * hs[i].moment();
            law.covariance = a * law.covariance * a.transpose();
            law.covariance.diagonal().array() += 2.0 * ss[i].eta / ss[i].beta;
        }
    }
    return law;
}

// ---- criterion 1 ----

Outcome criterion1(const fs::path&)
{
    const auto t0 = Clock::now();
    double worst_z = 0.0;
    double worst_oracle_gap = 0.0;
    std::string where;
    for (std::size_t d : {2, 3}) {
        for (std::size_t t : {1, 3, 5}) {
            const auto all = growing_histories(d, t, 1000 + 10 * d + t);
            const std::vector<History> hs(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(t));
            std::vector<LmcSchedule> ss;
            for (const auto& h : hs) {
                ss.push_back(LmcSchedule{1.0 / (4.0 * eigen_lambda_max(h.gram())), 2.0, 5});
            }
            const auto de = static_cast<Eigen::Index>(d);
            const GaussianLaw oracle = moment_recursion(hs, ss, Vector::Zero(de));
            const GaussianLaw law = closed_form_law(hs, ss, Vector::Zero(de));
            worst_oracle_gap = std::max({worst_oracle_gap, (law.mean - oracle.mean).cwiseAbs().maxCoeff(),
                                         (law.covariance - oracle.covariance).cwiseAbs().maxCoeff()});

            const RewardModel model = LinearModel{d};
            LangevinSampler sampler;
            RngStream rng(7000 + 10 * d + t, 4);
            Vector sum = Vector::Zero(de);
            Matrix outer = Matrix::Zero(de, de);
            for (std::size_t c = 0; c < kChains; ++c) {
                ChainState st{Vector::Zero(de), 0, 0};
                for (std::size_t i = 0; i < t; ++i) {
                    sampler.run_epoch(st, LossSpec(model, hs[i], 1.0), ss[i], rng);
                }
                sum += st.theta;
                outer.noalias() += st.theta * st.theta.transpose();
            }
            const double n = static_cast<double>(kChains);
            const Vector mean = sum / n;
            const Matrix cov = (outer - n * mean * mean.transpose()) / (n - 1.0);
            for (Eigen::Index j = 0; j < de; ++j) {
                const double z = std::abs(mean[j] - law.mean[j]) / std::sqrt(cov(j, j) / n);
                if (z > worst_z) {
                    worst_z = z;
                    where = "d=" + std::to_string(d) + " t=" + std::to_string(t) + " mean[" + std::to_string(j) + "]";
                }
                for (Eigen::Index k = j; k < de; ++k) {
                    const double se = std::sqrt((cov(j, j) * cov(k, k) + cov(j, k) * cov(j, k)) / n);
                    const double zc = std::abs(cov(j, k) - law.covariance(j, k)) / se;
                    if (zc > worst_z) {
                        worst_z = zc;
                        where = "d=" + std::to_string(d) + " t=" + std::to_string(t) + " cov[" + std::to_string(j) +
                                "," + std::to_string(k) + "]";
                    }
                }
            }
        }
    }
    const double secs = seconds_since(t0);
    const bool pass = worst_z <= kZLimit && worst_oracle_gap < 1e-9 && secs < 60.0;
    return {pass, "max |z| = " + fmt(worst_z) + " at " + where + " (limit " + fmt(kZLimit) +
                      "), closed form vs step recursion " + fmt(worst_oracle_gap, 2) + ", " + fmt(secs, 3) + " s"};
}

// ---- criterion 2 ----

struct LimitTrace {
    std::vector<double> errors;
    Matrix final_cov;
    History history{2, 1.0};
    double beta = 2.0;
};

LimitTrace limit_trace(const std::function<Matrix(const Matrix& vinv, double beta)>& target)
{
    LimitTrace tr;
    tr.history = growing_histories(2, 5, 2024).back();
    const Matrix& v = tr.history.gram();
    const Eigen::SelfAdjointEigenSolver<Matrix> eig(v);
    const double lmax = eig.eigenvalues().maxCoeff();
    const double eta_ref = 1.0 / eig.eigenvalues().minCoeff();
    const Matrix want = target(v.inverse(), tr.beta);
    for (double scale : {1e-1, 1e-2, 1e-3}) {
        const double eta = scale / lmax;
        const auto k = static_cast<std::size_t>(std::ceil(10.0 / eta * eta_ref));
        const std::vector<History> hs{tr.history};
        const std::vector<LmcSchedule> ss{LmcSchedule{eta, tr.beta, k}};
        tr.final_cov = closed_form_law(hs, ss, Vector::Zero(2)).covariance;
        tr.errors.push_back((tr.final_cov - want).cwiseAbs().maxCoeff() / want.cwiseAbs().maxCoeff());
    }
    return tr;
}

Outcome judge_limit(const LimitTrace& tr, const std::string& label, Clock::time_point t0)
{
    bool monotone = true;
    for (std::size_t i = 1; i < tr.errors.size(); ++i) {
        monotone = monotone && tr.errors[i] < tr.errors[i - 1];
    }
    const double secs = seconds_since(t0);
    const bool pass = monotone && tr.errors.back() < kLimitRelError && secs < 60.0;
    std::string detail = label + ": relative max-entry errors";
    for (double e : tr.errors) {
        detail += " " + fmt(e);
    }
    detail += monotone ? " (monotone)" : " (not monotone)";
    return {pass, detail};
}

Outcome criterion2(const fs::path&)
{
    const auto t0 = Clock::now();
    const LimitTrace tr = limit_trace([](const Matrix& vinv, double beta) { return Matrix(vinv / beta); });
    return judge_limit(tr, "target beta^-1 V^-1", t0);
}

Outcome criterion2c(const fs::path&)
{
    const auto t0 = Clock::now();
    const LimitTrace tr =
        limit_trace([](const Matrix& vinv, double beta) { return Matrix(vinv / (2.0 * beta)); });
    Outcome out = judge_limit(tr, "target (2 beta)^-1 V^-1", t0);

    // fixed point of S = A S A + (2 eta / beta) I solved through the Kronecker form
    const Matrix& v = tr.history.gram();
    const double eta = 1e-3 / eigen_lambda_max(v);
    const Matrix a = Matrix::Identity(2, 2) - 2.0 * eta * v;
    Matrix kron(4, 4);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            kron.block(2 * i, 2 * j, 2, 2) = a(i, j) * a;
        }
    }
    Vector rhs = Vector::Zero(4);
    rhs[0] = rhs[3] = 2.0 * eta / tr.beta;
    const Vector s = (Matrix::Identity(4, 4) - kron).partialPivLu().solve(rhs);
    Matrix fixed(2, 2);
    fixed << s[0], s[2], s[1], s[3];
    const double gap = (fixed - tr.final_cov).cwiseAbs().maxCoeff() / fixed.cwiseAbs().maxCoeff();
    out.pass = out.pass && gap < 1e-6;
    out.detail += "; stationary fixed point gap " + fmt(gap, 2);
    return out;
}

// ---- criterion 3 ----

Outcome criterion3(const fs::path&)
{
    const auto t0 = Clock::now();
    RngStream rng(33, 1);
    std::string detail;
    bool pass = true;
    struct Family {
        std::string name;
        std::function<RewardModel(std::size_t)> make;
    };
    const std::vector<Family> families{
        {"linear", [](std::size_t d) { return RewardModel{LinearModel{d}}; }},
        {"glm", [](std::size_t d) { return RewardModel{GlmModel{d, Link::logistic}}; }},
        {"mlp", [](std::size_t d) { return RewardModel{MlpModel({d, 6, 5, 1}, 0.1)}; }},
    };
    for (const auto& fam : families) {
        double worst = 0.0;
        int failures = 0;
        for (int c = 0; c < kFdChecks; ++c) {
            const std::size_t d = 2 + rng.uniform_index(5);
            const std::size_t n = 1 + rng.uniform_index(20);
            const RewardModel model = fam.make(d);
            History h(d, 1.0);
            for (std::size_t i = 0; i < n; ++i) {
                Vector x(static_cast<Eigen::Index>(d));
                rng.fill_normal(as_span(x));
                const double r = fam.name == "glm" ? (rng.uniform() < 0.5 ? 1.0 : 0.0) : rng.normal();
                h.observe(x, r);
            }
            const LossSpec spec(model, h, 0.5 + rng.uniform());
            Vector theta(static_cast<Eigen::Index>(parameter_count(model)));
            rng.fill_normal(as_span(theta));
            theta *= 0.5;
            Vector u(theta.size());
            rng.fill_normal(as_span(u));
            u.normalize();
            const double analytic = loss_gradient(spec, theta).dot(u);
            const double h_step = 1e-5;
            const double numeric =
                (loss(spec, theta + h_step * u) - loss(spec, theta - h_step * u)) / (2.0 * h_step);
            const double rel = std::abs(analytic - numeric) / std::max({std::abs(analytic), std::abs(numeric), kFdFloor});
            worst = std::max(worst, rel);
            failures += rel > kFdRelTol ? 1 : 0;
        }
        pass = pass && failures == 0;
        detail += fam.name + " " + std::to_string(kFdChecks - failures) + "/" + std::to_string(kFdChecks) +
                  " (worst " + fmt(worst, 2) + ") ";
    }
    const double secs = seconds_since(t0);
    pass = pass && secs < 60.0;
    return {pass, detail + "tol " + fmt(kFdRelTol) + ", " + fmt(secs, 3) + " s"};
}

// ---- regret experiments ----

struct Cell {
    std::string label;
    AgentConfig agent;
};

struct Tuned {
    std::string label;
    Curve curve;
    double final_regret = 0.0;
};

// Runs every cell, writes its curve under dir, returns the lowest final
// mean regret (ties to the first cell).
Tuned run_grid(const fs::path& dir, const std::string& tag, const std::vector<Cell>& cells, const EnvFactory& env,
               std::size_t horizon, const std::vector<std::uint64_t>& seeds)
{
    Tuned best;
    best.final_regret = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const BatchResult res = run_many(cells[i].agent, env, horizon, seeds);
        const std::string cell_tag = tag + "_cell" + std::to_string(i);
        write_results(dir, cell_tag, res, {{"label", cells[i].label}});
        const double final_regret = res.agg.mean.back();
        if (final_regret < best.final_regret) {
            best = Tuned{cells[i].label, Curve{res.agg.mean, res.agg.std_error}, final_regret};
        }
    }
    return best;
}

template <typename Setter>
std::vector<Cell> grid(const AgentConfig& base, const std::string& key, const std::vector<double>& values, Setter set)
{
    std::vector<Cell> cells;
    for (double v : values) {
        Cell c{base.variant + " " + key + "=" + fmt(v), base};
        set(c.agent, v);
        cells.push_back(c);
    }
    return cells;
}

bool sublinear(const Curve& c, double* ratio)
{
    const std::size_t third = c.mean.size() / 3;
    const double first = c.mean[third - 1] / static_cast<double>(third);
    const double last = (c.mean.back() - c.mean[c.mean.size() - third - 1]) / static_cast<double>(third);
    *ratio = last / first;
    return last < kSublinearRatio * first;
}

EnvConfig synthetic(const std::string& kind, bool changing)
{
    EnvConfig e;
    e.kind = kind;
    e.dim = 10;
    e.arms = 20;
    e.changing = changing;
    return e;
}

// ---- criterion 4 ----

Outcome criterion4(const fs::path& dir)
{
    const auto t0 = Clock::now();
    EnvConfig ec = synthetic("linear", false);
    ec.noise_variance = 0.5;
    const EnvFactory env(ec);
    const auto seeds = seed_range(5);
    constexpr std::size_t T = 3000;

    AgentConfig lm;
    lm.variant = "lmcts";
    lm.eta0 = 0.5;
    lm.epoch_length = 100;
    AgentConfig lt;
    lt.variant = "lints";
    AgentConfig eg;
    eg.variant = "egreedy";

    const Tuned b_lm = run_grid(dir, "c4_lmcts", grid(lm, "beta_inv", {0.05, 0.1, 0.5}, [](AgentConfig& a, double v) { a.beta_inv = v; }), env, T, seeds);
    const Tuned b_lt = run_grid(dir, "c4_lints", grid(lt, "c", {0.02, 0.05, 0.1}, [](AgentConfig& a, double v) { a.c = v; }), env, T, seeds);
    const Tuned b_eg = run_grid(dir, "c4_egreedy", grid(eg, "c", {0.1, 0.3, 1.0}, [](AgentConfig& a, double v) { a.c = v; }), env, T, seeds);

    double r_lm = 0.0, r_lt = 0.0;
    const bool sub_lm = sublinear(b_lm.curve, &r_lm);
    const bool sub_lt = sublinear(b_lt.curve, &r_lt);
    const double secs = seconds_since(t0);
    const bool pass = b_lm.final_regret <= kLinTsFactor * b_lt.final_regret &&
                      b_lm.final_regret <= kEpsGreedyFactor * b_eg.final_regret && sub_lm && sub_lt && secs < 600.0;
    return {pass, b_lm.label + " " + fmt(b_lm.final_regret) + ", " + b_lt.label + " " + fmt(b_lt.final_regret) +
                      ", " + b_eg.label + " " + fmt(b_eg.final_regret) + "; last/first third per-round " +
                      fmt(r_lm, 3) + " (lmcts), " + fmt(r_lt, 3) + " (lints); " + fmt(secs, 3) + " s"};
}

// ---- criterion 5 ----

Outcome criterion5(const fs::path& dir)
{
    const auto t0 = Clock::now();
    const EnvFactory env(synthetic("logistic", false));
    const auto seeds = seed_range(5);
    constexpr std::size_t T = 3000;

    AgentConfig lm;
    lm.variant = "lmcts";
    lm.model = "logistic";
    lm.epoch_length = 100;
    lm.eta0 = 0.5;
    AgentConfig gt;
    gt.variant = "glmtsl";
    gt.model = "logistic";
    AgentConfig eg;
    eg.variant = "egreedy";
    eg.model = "logistic";

    const Tuned b_lm = run_grid(dir, "c5_lmcts", grid(lm, "beta_inv", {0.05, 0.1, 0.2}, [](AgentConfig& a, double v) { a.beta_inv = v; }), env, T, seeds);
    const Tuned b_gt = run_grid(dir, "c5_glmtsl", grid(gt, "a", {0.1, 0.3, 1.0}, [](AgentConfig& a, double v) { a.a = v; }), env, T, seeds);
    const Tuned b_eg = run_grid(dir, "c5_egreedy", grid(eg, "c", {0.1, 0.3, 1.0}, [](AgentConfig& a, double v) { a.c = v; }), env, T, seeds);
    const double secs = seconds_since(t0);
    const bool pass = b_lm.final_regret < b_eg.final_regret && b_lm.final_regret <= kGlmTslFactor * b_gt.final_regret &&
                      secs < 900.0;
    return {pass, b_lm.label + " " + fmt(b_lm.final_regret) + ", " + b_gt.label + " " + fmt(b_gt.final_regret) +
                      ", " + b_eg.label + " " + fmt(b_eg.final_regret) + "; " + fmt(secs, 3) + " s"};
}

// ---- criterion 6 ----

Outcome criterion6(const fs::path& dir)
{
    const auto t0 = Clock::now();
    const EnvFactory env(synthetic("quadratic", true));
    const auto seeds = seed_range(3);
    constexpr std::size_t T = 3000;

    AgentConfig lm;
    lm.variant = "lmcts";
    lm.model = "mlp";
    lm.hidden = {20, 20, 20};
    lm.epoch_length = 100;
    lm.eta0 = 0.01;
    lm.beta_inv = 0.01;
    lm.batch_size = 32;
    AgentConfig lu;
    lu.variant = "linucb";
    AgentConfig lt;
    lt.variant = "lints";

    const Tuned b_lm = run_grid(dir, "c6_lmcts", {{"lmcts mlp", lm}}, env, T, seeds);
    const Tuned b_lu = run_grid(dir, "c6_linucb", grid(lu, "c", {0.1, 0.3, 1.0}, [](AgentConfig& a, double v) { a.c = v; }), env, T, seeds);
    const Tuned b_lt = run_grid(dir, "c6_lints", grid(lt, "c", {0.01, 0.03, 0.1}, [](AgentConfig& a, double v) { a.c = v; }), env, T, seeds);
    const double secs = seconds_since(t0);
    const bool pass = b_lu.final_regret > kSeparation * b_lm.final_regret &&
                      b_lt.final_regret > kSeparation * b_lm.final_regret && secs < 1800.0;
    return {pass, b_lm.label + " " + fmt(b_lm.final_regret) + ", " + b_lu.label + " " + fmt(b_lu.final_regret) +
                      ", " + b_lt.label + " " + fmt(b_lt.final_regret) + "; " + fmt(secs, 3) + " s"};
}

// ---- criterion 7 ----

struct SelectCost {
    double mean_select_s = 0.0;
    std::uint64_t factorizations = 0;
    RunRecord record;
};

// Factorizations are counted over the whole run, selection and update.
SelectCost timed_selection(const AgentConfig& cfg, const EnvFactory& factory, std::size_t rounds)
{
    SelectCost out;
    const std::uint64_t before = linalg::factorization_count();
    out.record = run_one(cfg, factory, rounds, 1);
    out.factorizations = linalg::factorization_count() - before;
    out.mean_select_s = std::accumulate(out.record.select_s.begin(), out.record.select_s.end(), 0.0) /
                        static_cast<double>(out.record.select_s.size());
    return out;
}

Outcome criterion7(const fs::path& dir)
{
    const auto t0 = Clock::now();
    EnvConfig ec;
    ec.kind = "linear";
    ec.dim = 2000;
    ec.arms = 10;
    const EnvFactory env(ec);
    constexpr std::size_t rounds = 200;

    AgentConfig lm;
    lm.variant = "lmcts";
    lm.epoch_length = 20;
    lm.eta0 = 0.25;
    lm.beta_inv = 0.01;
    AgentConfig lt;
    lt.variant = "lints";
    lt.c = 0.05;

    const SelectCost c_lm = timed_selection(lm, env, rounds);
    const SelectCost c_lt = timed_selection(lt, env, rounds);
    for (const auto& [tag, rec] : {std::pair{"c7_lmcts", &c_lm.record}, std::pair{"c7_lints", &c_lt.record}}) {
        write_results(dir, tag, BatchResult{aggregate({*rec}), {*rec}, {}, {}, 0.0}, {});
    }
    const double speedup = c_lt.mean_select_s / c_lm.mean_select_s;
    const double secs = seconds_since(t0);
    const bool pass = speedup >= kSpeedup && c_lm.factorizations == 0 && c_lt.factorizations > 0 &&
                      secs < 600.0;
    return {pass, "mean select " + fmt(c_lm.mean_select_s * 1e3) + " ms (lmcts) vs " +
                      fmt(c_lt.mean_select_s * 1e3) + " ms (lints), speedup " + fmt(speedup, 3) +
                      "; factorizations per run " + std::to_string(c_lm.factorizations) + " vs " +
                      std::to_string(c_lt.factorizations) + "; " + fmt(secs, 3) + " s"};
}

// ---- criterion 8 ----

Outcome criterion8(const fs::path& dir)
{
    const auto t0 = Clock::now();
    EnvConfig ec;
    ec.kind = "dataset";
    ec.path = std::string(LMCTS_TEST_DATA) + "/toy3.csv";
    const EnvFactory env(ec);
    constexpr std::size_t T = 300;

    std::vector<std::pair<std::string, AgentConfig>> agents;
    for (const std::string v : {"lmcts", "lints", "linucb", "egreedy", "uniform"}) {
        AgentConfig a;
        a.variant = v;
        agents.emplace_back(v, a);
    }
    for (const std::string v : {"ucbglm", "glmtsl", "egreedy"}) {
        AgentConfig a;
        a.variant = v;
        a.model = "logistic";
        agents.emplace_back(v + "_logistic", a);
    }
    AgentConfig ne;
    ne.variant = "neural_egreedy";
    ne.hidden = {10};
    ne.train_steps = 20;
    agents.emplace_back("neural_egreedy", ne);
    AgentConfig lmn;
    lmn.variant = "lmcts";
    lmn.model = "mlp";
    lmn.hidden = {10};
    lmn.epoch_length = 20;
    lmn.eta0 = 0.01;
    lmn.beta_inv = 0.01;
    agents.emplace_back("lmcts_mlp", lmn);

    bool pass = true;
    double lmcts_regret = 0.0;
    std::string bad;
    for (const auto& [name, cfg] : agents) {
        try {
            const BatchResult res = run_many(cfg, env, T, {1});
            write_results(dir, "c8_" + name, res, {});
            const RunRecord& r = res.records[0];
            const bool complete = r.rounds() == T && !r.truncated;
            const bool binary = std::all_of(r.regret.begin(), r.regret.end(), [](double g) { return g == 0.0 || g == 1.0; });
            if (!complete || !binary) {
                pass = false;
                bad += " " + name;
            }
            if (name == "lmcts") {
                lmcts_regret = r.cum_regret.back();
            }
        } catch (const std::exception& e) {
            pass = false;
            bad += " " + name + " (" + e.what() + ")";
        }
    }
    const double n_classes = 3.0;
    const double p = (n_classes - 1.0) / n_classes;
    const double uniform_mean = p * T;
    const double bound = uniform_mean - kUniformSigmas * std::sqrt(T * p * (1.0 - p));
    const double secs = seconds_since(t0);
    pass = pass && lmcts_regret < bound && secs < 60.0;
    return {pass, std::to_string(agents.size()) + " agents completed" + (bad.empty() ? "" : ", failing:" + bad) +
                      "; lmcts regret " + fmt(lmcts_regret) + " < " + fmt(bound) + " (uniform " + fmt(uniform_mean) +
                      " - 3 sigma); " + fmt(secs, 3) + " s"};
}

// ---- criterion 9 ----

using Criterion = std::function<Outcome(const fs::path&)>;

std::vector<fs::path> curve_files(const fs::path& dir)
{
    std::vector<fs::path> out;
    for (const auto& e : fs::directory_iterator(dir)) {
        const std::string name = e.path().filename().string();
        if (name.size() > 10 && name.ends_with("_curve.csv")) {
            out.push_back(e.path().filename());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string slurp(const fs::path& p)
{
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

Outcome criterion9(const fs::path& dir)
{
    const auto t0 = Clock::now();
    const std::vector<Criterion> runs{criterion4, criterion5, criterion6, criterion7, criterion8};
    const fs::path a = dir / "c9_first";
    const fs::path b = dir / "c9_second";
    for (const auto& p : {a, b}) {
        fs::remove_all(p);
        fs::create_directories(p);
        for (const auto& run : runs) {
            run(p);
        }
    }
    const auto files_a = curve_files(a);
    const auto files_b = curve_files(b);
    std::size_t identical = 0;
    std::string differing;
    for (const auto& f : files_a) {
        if (std::find(files_b.begin(), files_b.end(), f) != files_b.end() && slurp(a / f) == slurp(b / f)) {
            ++identical;
        } else {
            differing += " " + f.string();
        }
    }
    const bool pass = !files_a.empty() && files_a == files_b && identical == files_a.size();
    return {pass, std::to_string(identical) + "/" + std::to_string(files_a.size()) + " curve files byte-identical" +
                      (differing.empty() ? "" : ", differing:" + differing) + "; " + fmt(seconds_since(t0), 3) + " s"};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"acceptance checks"};
    std::string only;
    std::string out = (fs::temp_directory_path() / "lmcts_acceptance").string();
    app.add_option("--criterion", only, "run a single criterion (1-9 or 2c)");
    app.add_option("--out", out, "directory for result files");
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<std::string, Criterion>> all{
        {"1", criterion1}, {"2", criterion2}, {"2c", criterion2c}, {"3", criterion3}, {"4", criterion4},
        {"5", criterion5}, {"6", criterion6}, {"7", criterion7},   {"8", criterion8}, {"9", criterion9},
    };
    bool ok = true;
    bool matched = false;
    for (const auto& [id, run] : all) {
        if (!only.empty() && only != id) {
            continue;
        }
        matched = true;
        const fs::path dir = fs::path(out) / ("criterion" + id);
        fs::remove_all(dir);
        fs::create_directories(dir);
        Outcome o;
        try {
            o = run(dir);
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << std::endl;
        ok = ok && o.pass;
    }
    if (!matched) {
        std::cerr << "unknown criterion '" << only << "'\n";
        return 2;
    }
    return ok ? 0 : 1;
}
