#pragma once

#include <vector>

#include "lmcts/agents/agent.hpp"
#include "lmcts/agents/linear_agents.hpp"
#include "lmcts/models/model.hpp"

namespace lmcts {

// Regularized MLE for a GLM, re-solved once per round from the previous
// solution. The penalty is lambda/2 so the loss Hessian at the identity link
// equals the gram matrix lambda I + sum x x^T.
class MleTracker {
public:
    MleTracker(GlmModel model, double lambda, int max_iters, double tol);

    const Vector& estimate(const History& h);
    const GlmModel& model() const noexcept { return model_; }
    double penalty() const noexcept { return lambda_ / 2.0; }
    // Iterations spent by the last solve.
    int last_iterations() const noexcept { return iterations_; }

private:
    RewardModel model_var_;
    GlmModel model_;
    double lambda_;
    int max_iters_;
    double tol_;
    Vector theta_;
    std::size_t round_ = static_cast<std::size_t>(-1);
    int iterations_ = 0;
};

struct MleOptions {
    int max_iters = 50;
    double tol = 1e-6;
};

// UCB-GLM: argmax x^T theta_mle + nu_t ||x||_{V^{-1}} with the same width
// nu_t = c sqrt(d log t) as LinUCB.
class UcbGlmAgent final : public Agent {
public:
    UcbGlmAgent(GlmModel model, double lambda, double c, MleOptions mle, RngStream rng);

    std::string_view name() const override { return "ucbglm"; }
    std::size_t select(const ArmSet& arms) override;
    std::string cache_policy() const override { return "factor-per-round"; }

    const Vector& mle() { return mle_.estimate(history_); }
    const std::vector<double>& last_scores() const noexcept { return scores_; }

private:
    MleTracker mle_;
    double c_;
    RidgeCache cache_;
    std::vector<double> scores_;
};

// GLM Thompson sampling with a Laplace approximation: theta~ is drawn from
// N(theta_mle, a^2 H^{-1}) with H the loss Hessian at the MLE.
class GlmTslAgent final : public Agent {
public:
    GlmTslAgent(GlmModel model, double lambda, double a, MleOptions mle, RngStream rng);

    std::string_view name() const override { return "glmtsl"; }
    std::size_t select(const ArmSet& arms) override;
    std::string cache_policy() const override { return "factor-per-call"; }

    const Vector& last_sample() const noexcept { return sample_; }

private:
    MleTracker mle_;
    double a_;
    Vector zeta_;
    Vector sample_;
    std::vector<double> scores_;
};

// Epsilon-greedy with exploration rate min(1, c / sqrt(t)). The greedy arm
// maximizes the model at its point estimate: the ridge solution for the
// linear model, the regularized MLE for a GLM.
class EpsGreedyAgent final : public Agent {
public:
    EpsGreedyAgent(std::size_t dim, double lambda, double c, RngStream rng);
    EpsGreedyAgent(GlmModel model, double lambda, double c, MleOptions mle, RngStream rng);

    std::string_view name() const override { return "egreedy"; }
    std::size_t select(const ArmSet& arms) override;
    std::string cache_policy() const override { return glm_ ? "none" : "factor-per-round"; }

    double exploration_rate(std::size_t t) const;

private:
    double c_;
    std::optional<MleTracker> glm_;
    RidgeCache cache_;
    std::vector<double> scores_;
};

} // namespace lmcts
