#include "lmcts/agents/glm_agents.hpp"

#include <algorithm>
#include <cmath>

#include "lmcts/core/error.hpp"
#include "lmcts/models/loss.hpp"
#include "lmcts/models/minimize.hpp"
#include "lmcts/simd/kernels.hpp"

namespace lmcts {

namespace {

void linear_scores(const ArmSet& arms, const Vector& theta, std::vector<double>& out)
{
    out.assign(arms.size(), 0.0);
    simd::gemv_rows(arms.data(), arms.size(), arms.dim(), as_span(theta), out);
}

} // namespace

MleTracker::MleTracker(GlmModel model, double lambda, int max_iters, double tol)
    : model_var_(model), model_(model), lambda_(lambda), max_iters_(max_iters), tol_(tol),
      theta_(Vector::Zero(static_cast<Eigen::Index>(model.dim)))
{
    if (!(lambda > 0.0) || max_iters < 0 || !(tol > 0.0)) {
        throw InvalidInput("MLE: need lambda > 0, max_iters >= 0, tol > 0");
    }
}

const Vector& MleTracker::estimate(const History& h)
{
    if (round_ == h.round()) {
        return theta_;
    }
    round_ = h.round();
    if (h.empty()) {
        theta_.setZero();
        iterations_ = 0;
        return theta_;
    }
    const LossSpec spec(model_var_, h, penalty());
    MinimizeResult res = minimize_newton(spec, theta_, max_iters_, tol_);
    theta_ = std::move(res.theta);
    iterations_ = res.iterations;
    return theta_;
}

UcbGlmAgent::UcbGlmAgent(GlmModel model, double lambda, double c, MleOptions mle, RngStream rng)
    : Agent(model.dim, lambda, std::move(rng)), mle_(model, lambda, mle.max_iters, mle.tol), c_(c)
{
    if (!(c >= 0.0)) {
        throw InvalidInput("ucbglm: need c >= 0");
    }
}

std::size_t UcbGlmAgent::select(const ArmSet& arms)
{
    check_arms(arms);
    const Vector& theta = mle_.estimate(history_);
    const double nu = confidence_width(c_, history_.dim(), round());
    linear_scores(arms, theta, scores_);
    if (nu > 0.0) {
        const auto& factor = cache_.factor(history_);
        Vector x(static_cast<Eigen::Index>(arms.dim()));
        for (std::size_t i = 0; i < arms.size(); ++i) {
            const auto row = arms.row(i);
            std::copy(row.begin(), row.end(), x.data());
            scores_[i] += nu * std::sqrt(factor.inv_quad(x));
        }
    }
    return argmax_lowest(scores_);
}

GlmTslAgent::GlmTslAgent(GlmModel model, double lambda, double a, MleOptions mle, RngStream rng)
    : Agent(model.dim, lambda, std::move(rng)), mle_(model, lambda, mle.max_iters, mle.tol), a_(a)
{
    if (!(a >= 0.0)) {
        throw InvalidInput("glmtsl: need a >= 0");
    }
    zeta_.resize(static_cast<Eigen::Index>(model.dim));
}

std::size_t GlmTslAgent::select(const ArmSet& arms)
{
    check_arms(arms);
    const Vector& theta = mle_.estimate(history_);
    const RewardModel model = mle_.model();
    const LossSpec spec(model, history_, mle_.penalty());
    const linalg::SpdFactor factor(hessian(spec, theta));
    rng_.fill_normal(as_span(zeta_));
    sample_ = theta + a_ * factor.inv_sqrt_t(zeta_);
    // the link is monotone, so ranking x^T theta~ ranks mu(x^T theta~)
    linear_scores(arms, sample_, scores_);
    return argmax_lowest(scores_);
}

EpsGreedyAgent::EpsGreedyAgent(std::size_t dim, double lambda, double c, RngStream rng)
    : Agent(dim, lambda, std::move(rng)), c_(c)
{
    if (!(c >= 0.0)) {
        throw InvalidInput("egreedy: need c >= 0");
    }
}

EpsGreedyAgent::EpsGreedyAgent(GlmModel model, double lambda, double c, MleOptions mle, RngStream rng)
    : EpsGreedyAgent(model.dim, lambda, c, std::move(rng))
{
    glm_.emplace(model, lambda, mle.max_iters, mle.tol);
}

double EpsGreedyAgent::exploration_rate(std::size_t t) const
{
    return std::min(1.0, c_ / std::sqrt(static_cast<double>(t)));
}

std::size_t EpsGreedyAgent::select(const ArmSet& arms)
{
    check_arms(arms);
    if (rng_.uniform() < exploration_rate(round())) {
        return static_cast<std::size_t>(rng_.uniform_index(arms.size()));
    }
    const Vector& theta = glm_ ? glm_->estimate(history_) : cache_.theta_hat(history_);
    linear_scores(arms, theta, scores_);
    return argmax_lowest(scores_);
}

} // namespace lmcts
