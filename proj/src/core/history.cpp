#include "lmcts/core/history.hpp"

#include <cmath>
#include <sstream>

#include "lmcts/core/error.hpp"
#include "lmcts/core/linalg.hpp"

namespace lmcts {

ArmSet::ArmSet(std::size_t dim, std::vector<double> row_major) : dim_(dim), data_(std::move(row_major))
{
    if (dim_ == 0 || data_.empty() || data_.size() % dim_ != 0) {
        throw InvalidInput("ArmSet: need a non-empty set of arms with a common positive dimension");
    }
    for (double v : data_) {
        if (!std::isfinite(v)) {
            throw InvalidInput("ArmSet: non-finite feature value");
        }
    }
}

ArmSet::ArmSet(const std::vector<ArmFeature>& arms)
{
    if (arms.empty() || arms.front().size() == 0) {
        throw InvalidInput("ArmSet: need a non-empty set of arms with a common positive dimension");
    }
    dim_ = static_cast<std::size_t>(arms.front().size());
    data_.reserve(arms.size() * dim_);
    for (const auto& a : arms) {
        if (static_cast<std::size_t>(a.size()) != dim_) {
            throw InvalidInput("ArmSet: arms differ in dimension");
        }
        if (!a.allFinite()) {
            throw InvalidInput("ArmSet: non-finite feature value");
        }
        data_.insert(data_.end(), a.data(), a.data() + a.size());
    }
}

ArmFeature ArmSet::arm(std::size_t i) const
{
    return Eigen::Map<const Vector>(data_.data() + i * dim_, static_cast<Eigen::Index>(dim_));
}

std::size_t argmax_lowest(std::span<const double> scores)
{
    if (scores.empty()) {
        throw InvalidInput("argmax over an empty score vector");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < scores.size(); ++i) {
        if (scores[i] > scores[best]) {
            best = i;
        }
    }
    return best;
}

History::History(std::size_t dim, double lambda)
    : dim_(dim), lambda_(lambda),
      gram_(lambda * Matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim))),
      moment_(Vector::Zero(static_cast<Eigen::Index>(dim)))
{
    if (dim == 0) {
        throw InvalidInput("History: dimension must be positive");
    }
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw InvalidInput("History: lambda must be positive and finite");
    }
}

History History::rebuild(std::size_t dim, double lambda, std::span<const double> features,
                         std::span<const double> rewards)
{
    if (features.size() != rewards.size() * dim) {
        throw InvalidInput("History::rebuild: transcript shape mismatch");
    }
    History h(dim, lambda);
    const auto n = static_cast<Eigen::Index>(rewards.size());
    const auto d = static_cast<Eigen::Index>(dim);
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> x(features.data(), n, d);
    Eigen::Map<const Vector> r(rewards.data(), n);
    h.gram_.noalias() += x.transpose() * x;
    h.moment_.noalias() = x.transpose() * r;
    h.features_.assign(features.begin(), features.end());
    h.rewards_.assign(rewards.begin(), rewards.end());
    return h;
}

void History::observe(std::span<const double> x, double reward)
{
    if (x.size() != dim_) {
        std::ostringstream msg;
        msg << "History::observe: feature dimension " << x.size() << " != " << dim_;
        throw InvalidInput(msg.str());
    }
    if (!std::isfinite(reward)) {
        throw InvalidInput("History::observe: non-finite reward");
    }
    const auto d = static_cast<Eigen::Index>(dim_);
    Eigen::Map<const Vector> xv(x.data(), d);
    gram_.noalias() += xv * xv.transpose();
    moment_.noalias() += reward * xv;
    features_.insert(features_.end(), x.begin(), x.end());
    rewards_.push_back(reward);
}

Vector History::ridge_solution() const
{
    return linalg::SpdFactor(gram_).solve(moment_);
}

double History::mahalanobis_inv_norm(const ArmFeature& x) const
{
    if (static_cast<std::size_t>(x.size()) != dim_) {
        throw InvalidInput("mahalanobis_inv_norm: dimension mismatch");
    }
    return std::sqrt(linalg::SpdFactor(gram_).inv_quad(x));
}

History update_history(History h, const ArmFeature& x, double reward)
{
    h.observe(x, reward);
    return h;
}

} // namespace lmcts
