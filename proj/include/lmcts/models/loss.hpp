#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "lmcts/core/history.hpp"
#include "lmcts/models/model.hpp"

namespace lmcts {

// Regularized loss of a reward model over a history:
//   linear: sum (x^T theta - r)^2 + lambda ||theta||^2
//   GLM:    sum (m(x^T theta) - r x^T theta) + lambda ||theta||^2
//   MLP:    sum (f(x, theta) - r)^2 + lambda ||theta||^2
// Holds references; the model and history must outlive the spec.
class LossSpec {
public:
    LossSpec(const RewardModel& model, const History& history, double lambda);

    const RewardModel& model() const noexcept { return model_.get(); }
    const History& history() const noexcept { return history_.get(); }
    double lambda() const noexcept { return lambda_; }
    std::size_t parameter_count() const { return lmcts::parameter_count(model_.get()); }

private:
    std::reference_wrapper<const RewardModel> model_;
    std::reference_wrapper<const History> history_;
    double lambda_;
};

double loss(const LossSpec& spec, const Vector& theta);
Vector loss_gradient(const LossSpec& spec, const Vector& theta);
// Linear: 2 (V - lambda_h I + lambda I), which is exactly 2V when the spec and
// history regularizers agree. GLM: sum mu'(z) x x^T + 2 lambda I. The network
// model has no Hessian here and raises UnsupportedOperation.
Matrix hessian(const LossSpec& spec, const Vector& theta);

// Gradient evaluation with reusable scratch buffers, for the sampler's inner
// loop. Not thread-safe; give each chain its own evaluator.
class GradientEvaluator {
public:
    // Full-transcript gradient. The linear model uses 2 (V theta - b).
    void gradient(const LossSpec& spec, const Vector& theta, Vector& out);

    // Unbiased mini-batch estimate: the data term over `rows` is rescaled by
    // n / |rows| where n is the transcript length; the regularizer is exact.
    void gradient_subset(const LossSpec& spec, const Vector& theta, std::span<const std::size_t> rows, Vector& out);

private:
    void data_gradient(const LossSpec& spec, const Vector& theta, std::span<const double> x,
                       std::span<const double> r, std::size_t n, double scale, Vector& out);

    std::vector<double> z_;
    std::vector<double> x_batch_;
    std::vector<double> r_batch_;
    mlp::ForwardCache cache_;
};

} // namespace lmcts
