#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "lmcts/agents/agent.hpp"
#include "lmcts/core/linalg.hpp"

namespace lmcts {

// Cholesky factor of the current gram matrix plus the ridge estimate.
// Refactored lazily on the first use after each update.
class RidgeCache {
public:
    const linalg::SpdFactor& factor(const History& h);
    const Vector& theta_hat(const History& h);

private:
    void refresh(const History& h);

    std::optional<linalg::SpdFactor> factor_;
    Vector theta_hat_;
    std::size_t round_ = static_cast<std::size_t>(-1);
};

// Linear Thompson sampling: theta~ = theta_hat + sqrt(v) L^{-T} zeta with
// V = L L^T and v = (c sqrt(d log T))^2 fixed for the run.
class LinTsAgent final : public Agent {
public:
    LinTsAgent(std::size_t dim, double lambda, double c, std::size_t horizon, RngStream rng);

    std::string_view name() const override { return "lints"; }
    std::size_t select(const ArmSet& arms) override;
    std::string cache_policy() const override { return "factor-per-round"; }

    double v() const noexcept { return v_; }
    // Parameter sampled by the last selection.
    const Vector& last_sample() const noexcept { return sample_; }

private:
    double v_;
    RidgeCache cache_;
    Vector zeta_;
    Vector sample_;
    std::vector<double> scores_;
};

// LinUCB: argmax x^T theta_hat + nu_t ||x||_{V^{-1}} with nu_t = c sqrt(d log t).
class LinUcbAgent final : public Agent {
public:
    LinUcbAgent(std::size_t dim, double lambda, double c, RngStream rng);

    std::string_view name() const override { return "linucb"; }
    std::size_t select(const ArmSet& arms) override;
    std::string cache_policy() const override { return "factor-per-round"; }

    const std::vector<double>& last_scores() const noexcept { return scores_; }

private:
    double c_;
    RidgeCache cache_;
    std::vector<double> scores_;
};

double confidence_width(double c, std::size_t dim, std::size_t t);

} // namespace lmcts
