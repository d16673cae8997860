#pragma once

#include <cstdint>

#include "lmcts/core/rng.hpp"
#include "lmcts/envs/environment.hpp"

namespace lmcts {

enum class SyntheticKind { linear, logistic, quadratic };

struct SyntheticConfig {
    SyntheticKind kind = SyntheticKind::linear;
    std::size_t dim = 10;
    std::size_t arm_count = 20;
    bool changing_arms = false;
    // Gaussian noise variance; negative selects the kind's default (0.5 for
    // linear, 1 for quadratic). Unused by the logistic kind.
    double noise_variance = -1.0;
};

double default_noise_variance(SyntheticKind kind);

// Synthetic bandit with a hidden unit-norm theta*:
//   linear     r = theta*^T x + xi
//   logistic   r ~ Bernoulli(sigmoid(theta*^T x))
//   quadratic  r = 10 (theta*^T x)^2 + xi
// with xi ~ N(0, sigma^2). Arms are N(0, I) draws scaled to unit norm. theta*
// and the fixed arm set come from stream env_setup, changing arm sets from
// env_arms and reward noise from env_noise, so agents never share draws with
// the environment.
class SyntheticEnv final : public Environment {
public:
    SyntheticEnv(const SyntheticConfig& cfg, std::uint64_t seed);
    // Fixed theta*; used by tests.
    SyntheticEnv(const SyntheticConfig& cfg, Vector theta_star, std::uint64_t seed);

    std::size_t dim() const override { return cfg_.dim; }
    std::optional<ArmSet> arms(std::size_t t) override;
    RoundOutcome pull(const ArmSet& arms, std::size_t index) override;
    OracleChoice oracle_best(const ArmSet& arms) const override;
    std::map<std::string, std::string> describe() const override;

    const SyntheticConfig& config() const noexcept { return cfg_; }
    const Vector& theta_star() const noexcept { return theta_; }
    double noise_variance() const noexcept { return noise_var_; }
    double expected_reward(std::span<const double> x) const;
    // Realized reward of a single context.
    double sample_reward(std::span<const double> x);

private:
    ArmSet draw_arm_set(RngStream& rng) const;

    SyntheticConfig cfg_;
    double noise_var_;
    Vector theta_;
    RngStream arm_rng_;
    RngStream noise_rng_;
    ArmSet fixed_;
};

SyntheticKind parse_synthetic_kind(const std::string& name);
std::string to_string(SyntheticKind kind);

} // namespace lmcts
