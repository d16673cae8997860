#include "lmcts/agents/linear_agents.hpp"

#include <algorithm>
#include <cmath>

#include "lmcts/core/error.hpp"
#include "lmcts/simd/kernels.hpp"

namespace lmcts {

void RidgeCache::refresh(const History& h)
{
    if (factor_ && round_ == h.round()) {
        return;
    }
    factor_.emplace(h.gram());
    theta_hat_ = factor_->solve(h.moment());
    round_ = h.round();
}

const linalg::SpdFactor& RidgeCache::factor(const History& h)
{
    refresh(h);
    return *factor_;
}

const Vector& RidgeCache::theta_hat(const History& h)
{
    refresh(h);
    return theta_hat_;
}

double confidence_width(double c, std::size_t dim, std::size_t t)
{
    return c * std::sqrt(static_cast<double>(dim) * std::log(static_cast<double>(t)));
}

LinTsAgent::LinTsAgent(std::size_t dim, double lambda, double c, std::size_t horizon, RngStream rng)
    : Agent(dim, lambda, std::move(rng))
{
    if (!(c >= 0.0) || horizon == 0) {
        throw InvalidInput("lints: need c >= 0 and a positive horizon");
    }
    const double w = confidence_width(c, dim, horizon);
    v_ = w * w;
    zeta_.resize(static_cast<Eigen::Index>(dim));
}

std::size_t LinTsAgent::select(const ArmSet& arms)
{
    check_arms(arms);
    const auto& factor = cache_.factor(history_);
    const Vector& theta_hat = cache_.theta_hat(history_);
    rng_.fill_normal(as_span(zeta_));
    sample_ = theta_hat + std::sqrt(v_) * factor.inv_sqrt_t(zeta_);

    scores_.assign(arms.size(), 0.0);
    simd::gemv_rows(arms.data(), arms.size(), arms.dim(), as_span(sample_), scores_);
    return argmax_lowest(scores_);
}

LinUcbAgent::LinUcbAgent(std::size_t dim, double lambda, double c, RngStream rng)
    : Agent(dim, lambda, std::move(rng)), c_(c)
{
    if (!(c >= 0.0)) {
        throw InvalidInput("linucb: need c >= 0");
    }
}

std::size_t LinUcbAgent::select(const ArmSet& arms)
{
    check_arms(arms);
    const auto& factor = cache_.factor(history_);
    const Vector& theta_hat = cache_.theta_hat(history_);
    const double nu = confidence_width(c_, history_.dim(), round());

    scores_.resize(arms.size());
    Vector x(static_cast<Eigen::Index>(arms.dim()));
    for (std::size_t i = 0; i < arms.size(); ++i) {
        const auto row = arms.row(i);
        std::copy(row.begin(), row.end(), x.data());
        scores_[i] = x.dot(theta_hat) + (nu > 0.0 ? nu * std::sqrt(factor.inv_quad(x)) : 0.0);
    }
    return argmax_lowest(scores_);
}

} // namespace lmcts
