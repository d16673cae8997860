#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lmcts/core/types.hpp"

namespace lmcts {

// Interaction history of one bandit run.
//
// Keeps the ridge sufficient statistics
//     gram   = lambda I + sum_s x_s x_s^T
//     moment = sum_s r_s x_s
// together with the raw transcript, which the logistic and network losses
// need. The transcript features are stored row-major (round x dim).
class History {
public:
    History(std::size_t dim, double lambda);

    // Batch reconstruction from a transcript (row-major features).
    static History rebuild(std::size_t dim, double lambda, std::span<const double> features,
                           std::span<const double> rewards);

    std::size_t dim() const noexcept { return dim_; }
    double lambda() const noexcept { return lambda_; }
    // Number of stored observations (t - 1 at round t).
    std::size_t round() const noexcept { return rewards_.size(); }
    bool empty() const noexcept { return rewards_.empty(); }

    const Matrix& gram() const noexcept { return gram_; }
    const Vector& moment() const noexcept { return moment_; }
    std::span<const double> features() const noexcept { return features_; }
    std::span<const double> rewards() const noexcept { return rewards_; }
    std::span<const double> feature(std::size_t i) const { return {features_.data() + i * dim_, dim_}; }

    // In-place append under exclusive ownership.
    void observe(std::span<const double> x, double reward);
    void observe(const ArmFeature& x, double reward) { observe(as_span(x), reward); }

    // Ridge estimate V^{-1} b via a Cholesky solve.
    Vector ridge_solution() const;
    // sqrt(x^T V^{-1} x) via a Cholesky solve; no inverse is formed.
    double mahalanobis_inv_norm(const ArmFeature& x) const;

private:
    std::size_t dim_;
    double lambda_;
    Matrix gram_;
    Vector moment_;
    std::vector<double> features_;
    std::vector<double> rewards_;
};

// Value-returning update: the input history is left untouched.
History update_history(History h, const ArmFeature& x, double reward);

} // namespace lmcts
