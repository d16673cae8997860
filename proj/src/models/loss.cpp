#include "lmcts/models/loss.hpp"

#include <cmath>
#include <sstream>

#include "lmcts/core/error.hpp"
#include "lmcts/core/linalg.hpp"
#include "lmcts/simd/kernels.hpp"

namespace lmcts {

LossSpec::LossSpec(const RewardModel& model, const History& history, double lambda)
    : model_(model), history_(history), lambda_(lambda)
{
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw InvalidInput("LossSpec: lambda must be finite and nonnegative");
    }
    if (input_dim(model) != history.dim()) {
        std::ostringstream msg;
        msg << "LossSpec: model input dimension " << input_dim(model) << " != history dimension " << history.dim();
        throw InvalidInput(msg.str());
    }
}

namespace {

void check_theta(const LossSpec& spec, const Vector& theta)
{
    if (static_cast<std::size_t>(theta.size()) != spec.parameter_count()) {
        std::ostringstream msg;
        msg << "loss: parameter length " << theta.size() << " != " << spec.parameter_count();
        throw InvalidInput(msg.str());
    }
}

} // namespace

double loss(const LossSpec& spec, const Vector& theta)
{
    check_theta(spec, theta);
    const History& h = spec.history();
    const std::size_t n = h.round();
    const std::size_t d = h.dim();
    double data = 0.0;
    std::visit(
        [&](const auto& m) {
            using M = std::decay_t<decltype(m)>;
            std::vector<double> f(n);
            if (n == 0) {
                return;
            }
            if constexpr (std::is_same_v<M, GlmModel>) {
                simd::gemv_rows(h.features(), n, d, as_span(theta), f);
                for (std::size_t i = 0; i < n; ++i) {
                    data += m.cumulant(f[i]) - h.rewards()[i] * f[i];
                }
            } else {
                predict_batch(spec.model(), h.features(), n, theta, f);
                for (std::size_t i = 0; i < n; ++i) {
                    const double e = f[i] - h.rewards()[i];
                    data += e * e;
                }
            }
        },
        spec.model());
    return data + spec.lambda() * theta.squaredNorm();
}

Vector loss_gradient(const LossSpec& spec, const Vector& theta)
{
    GradientEvaluator eval;
    Vector g;
    eval.gradient(spec, theta, g);
    return g;
}

Matrix hessian(const LossSpec& spec, const Vector& theta)
{
    check_theta(spec, theta);
    const History& h = spec.history();
    const auto d = static_cast<Eigen::Index>(h.dim());
    return std::visit(
        [&](const auto& m) -> Matrix {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, LinearModel>) {
                Matrix out = 2.0 * h.gram();
                out.diagonal().array() += 2.0 * (spec.lambda() - h.lambda());
                return out;
            } else if constexpr (std::is_same_v<M, GlmModel>) {
                const auto n = static_cast<Eigen::Index>(h.round());
                Matrix out = 2.0 * spec.lambda() * Matrix::Identity(d, d);
                if (n == 0) {
                    return out;
                }
                Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> x(
                    h.features().data(), n, d);
                const Vector z = x * theta;
                Vector w(n);
                for (Eigen::Index i = 0; i < n; ++i) {
                    w[i] = m.mean_derivative(z[i]);
                }
                out.noalias() += x.transpose() * w.asDiagonal() * x;
                return out;
            } else {
                throw UnsupportedOperation("hessian: not available for the network model");
            }
        },
        spec.model());
}

void GradientEvaluator::gradient(const LossSpec& spec, const Vector& theta, Vector& out)
{
    check_theta(spec, theta);
    const History& h = spec.history();
    if (std::holds_alternative<LinearModel>(spec.model())) {
        // 2 (V theta - b), with V carrying the history's regularizer
        linalg::symmetric_matvec(h.gram(), theta, out);
        out -= h.moment();
        out *= 2.0;
        if (spec.lambda() != h.lambda()) {
            out += 2.0 * (spec.lambda() - h.lambda()) * theta;
        }
        return;
    }
    out = 2.0 * spec.lambda() * theta;
    data_gradient(spec, theta, h.features(), h.rewards(), h.round(), 1.0, out);
}

void GradientEvaluator::gradient_subset(const LossSpec& spec, const Vector& theta, std::span<const std::size_t> rows,
                                        Vector& out)
{
    check_theta(spec, theta);
    const History& h = spec.history();
    const std::size_t n = h.round();
    const std::size_t d = h.dim();
    out = 2.0 * spec.lambda() * theta;
    if (rows.empty() || n == 0) {
        return;
    }
    x_batch_.resize(rows.size() * d);
    r_batch_.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i] >= n) {
            throw InvalidInput("gradient_subset: row index out of range");
        }
        const auto src = h.feature(rows[i]);
        std::copy(src.begin(), src.end(), x_batch_.begin() + static_cast<std::ptrdiff_t>(i * d));
        r_batch_[i] = h.rewards()[rows[i]];
    }
    const double scale = static_cast<double>(n) / static_cast<double>(rows.size());
    data_gradient(spec, theta, x_batch_, r_batch_, rows.size(), scale, out);
}

void GradientEvaluator::data_gradient(const LossSpec& spec, const Vector& theta, std::span<const double> x,
                                      std::span<const double> r, std::size_t n, double scale, Vector& out)
{
    if (n == 0) {
        return;
    }
    const std::size_t d = spec.history().dim();
    z_.resize(n);
    std::visit(
        [&](const auto& m) {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, LinearModel>) {
                simd::gemv_rows(x, n, d, as_span(theta), z_);
                for (std::size_t i = 0; i < n; ++i) {
                    z_[i] = 2.0 * scale * (z_[i] - r[i]);
                }
                simd::gemv_t_rows(x, n, d, z_, as_span(out));
            } else if constexpr (std::is_same_v<M, GlmModel>) {
                simd::gemv_rows(x, n, d, as_span(theta), z_);
                if (m.link == Link::logistic) {
                    simd::logistic_residual(z_, r, z_);
                } else {
                    for (std::size_t i = 0; i < n; ++i) {
                        z_[i] -= r[i];
                    }
                }
                if (scale != 1.0) {
                    for (auto& v : z_) {
                        v *= scale;
                    }
                }
                simd::gemv_t_rows(x, n, d, z_, as_span(out));
            } else {
                const auto f = mlp::forward(m, x, n, theta, cache_);
                for (std::size_t i = 0; i < n; ++i) {
                    z_[i] = 2.0 * scale * (f[i] - r[i]);
                }
                mlp::backward(m, theta, n, z_, cache_, out);
            }
        },
        spec.model());
}

} // namespace lmcts
