#include "lmcts/envs/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lmcts/core/error.hpp"
#include "lmcts/simd/kernels.hpp"

namespace lmcts {

namespace {

void normalize(std::span<double> v)
{
    double sq = 0.0;
    for (double x : v) {
        sq += x * x;
    }
    const double norm = std::sqrt(sq);
    for (double& x : v) {
        x /= norm;
    }
}

std::string format_double(double x)
{
    std::ostringstream s;
    s.precision(17);
    s << x;
    return s.str();
}

} // namespace

double default_noise_variance(SyntheticKind kind)
{
    switch (kind) {
    case SyntheticKind::linear:
        return 0.5;
    case SyntheticKind::quadratic:
        return 1.0;
    case SyntheticKind::logistic:
        return 0.0;
    }
    return 0.0;
}

SyntheticKind parse_synthetic_kind(const std::string& name)
{
    if (name == "linear") {
        return SyntheticKind::linear;
    }
    if (name == "logistic") {
        return SyntheticKind::logistic;
    }
    if (name == "quadratic") {
        return SyntheticKind::quadratic;
    }
    throw ConfigError("env: unknown kind '" + name + "' (linear, logistic, quadratic, dataset)");
}

std::string to_string(SyntheticKind kind)
{
    switch (kind) {
    case SyntheticKind::linear:
        return "linear";
    case SyntheticKind::logistic:
        return "logistic";
    case SyntheticKind::quadratic:
        return "quadratic";
    }
    return "?";
}

SyntheticEnv::SyntheticEnv(const SyntheticConfig& cfg, std::uint64_t seed)
    : SyntheticEnv(cfg, Vector(), seed)
{
}

SyntheticEnv::SyntheticEnv(const SyntheticConfig& cfg, Vector theta_star, std::uint64_t seed)
    : cfg_(cfg), arm_rng_(seed, streams::env_arms), noise_rng_(seed, streams::env_noise)
{
    if (cfg.dim == 0 || cfg.arm_count == 0) {
        throw InvalidInput("synthetic env: d and |X| must be at least 1");
    }
    noise_var_ = cfg.noise_variance < 0.0 ? default_noise_variance(cfg.kind) : cfg.noise_variance;
    if (!std::isfinite(noise_var_)) {
        throw InvalidInput("synthetic env: noise variance must be finite");
    }
    RngStream setup(seed, streams::env_setup);
    if (theta_star.size() == 0) {
        theta_.resize(static_cast<Eigen::Index>(cfg.dim));
        setup.fill_normal(as_span(theta_));
    } else {
        if (static_cast<std::size_t>(theta_star.size()) != cfg.dim) {
            throw InvalidInput("synthetic env: theta* dimension mismatch");
        }
        theta_ = std::move(theta_star);
    }
    normalize(as_span(theta_));
    if (!cfg.changing_arms) {
        fixed_ = draw_arm_set(setup);
    }
}

ArmSet SyntheticEnv::draw_arm_set(RngStream& rng) const
{
    std::vector<double> data(cfg_.dim * cfg_.arm_count);
    rng.fill_normal(data);
    for (std::size_t i = 0; i < cfg_.arm_count; ++i) {
        normalize(std::span<double>(data.data() + i * cfg_.dim, cfg_.dim));
    }
    return ArmSet(cfg_.dim, std::move(data));
}

std::optional<ArmSet> SyntheticEnv::arms(std::size_t t)
{
    if (t == 0) {
        throw InvalidInput("synthetic env: rounds are numbered from 1");
    }
    if (!cfg_.changing_arms) {
        return fixed_;
    }
    return draw_arm_set(arm_rng_);
}

double SyntheticEnv::expected_reward(std::span<const double> x) const
{
    if (x.size() != cfg_.dim) {
        throw InvalidInput("synthetic env: context dimension mismatch");
    }
    const double z = simd::dot(x, as_span(theta_));
    switch (cfg_.kind) {
    case SyntheticKind::linear:
        return z;
    case SyntheticKind::logistic:
        return 1.0 / (1.0 + std::exp(-z));
    case SyntheticKind::quadratic:
        return 10.0 * z * z;
    }
    return 0.0;
}

double SyntheticEnv::sample_reward(std::span<const double> x)
{
    const double mean = expected_reward(x);
    if (cfg_.kind == SyntheticKind::logistic) {
        return noise_rng_.bernoulli(mean) ? 1.0 : 0.0;
    }
    return mean + std::sqrt(noise_var_) * noise_rng_.normal();
}

OracleChoice SyntheticEnv::oracle_best(const ArmSet& arms) const
{
    if (arms.empty()) {
        throw InvalidInput("synthetic env: empty arm set");
    }
    OracleChoice best{0, expected_reward(arms.row(0))};
    for (std::size_t i = 1; i < arms.size(); ++i) {
        const double e = expected_reward(arms.row(i));
        if (e > best.expected) {
            best = {i, e};
        }
    }
    return best;
}

RoundOutcome SyntheticEnv::pull(const ArmSet& arms, std::size_t index)
{
    if (index >= arms.size()) {
        throw InvalidInput("synthetic env: arm index out of range");
    }
    RoundOutcome out;
    out.best_expected = oracle_best(arms).expected;
    out.chosen_expected = expected_reward(arms.row(index));
    out.regret = std::max(0.0, out.best_expected - out.chosen_expected);
    out.reward = sample_reward(arms.row(index));
    return out;
}

std::map<std::string, std::string> SyntheticEnv::describe() const
{
    return {{"env.kind", to_string(cfg_.kind)},
            {"env.d", std::to_string(cfg_.dim)},
            {"env.arms", std::to_string(cfg_.arm_count)},
            {"env.changing", cfg_.changing_arms ? "true" : "false"},
            {"env.noise_variance", format_double(noise_var_)}};
}

} // namespace lmcts
