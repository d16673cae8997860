#include "lmcts/models/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lmcts/core/error.hpp"
#include "lmcts/simd/kernels.hpp"

namespace lmcts {

double GlmModel::mean(double z) const
{
    if (link == Link::identity) {
        return z;
    }
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    const double e = std::exp(z);
    return e / (1.0 + e);
}

double GlmModel::mean_derivative(double z) const
{
    if (link == Link::identity) {
        return 1.0;
    }
    const double m = mean(z);
    return m * (1.0 - m);
}

double GlmModel::cumulant(double z) const
{
    if (link == Link::identity) {
        return 0.5 * z * z;
    }
    return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

MlpModel::MlpModel(std::vector<std::size_t> widths, double alpha) : widths_(std::move(widths)), alpha_(alpha)
{
    if (widths_.size() < 2 || widths_.back() != 1) {
        throw InvalidInput("MlpModel: widths must be [input, hidden..., 1]");
    }
    for (std::size_t w : widths_) {
        if (w == 0) {
            throw InvalidInput("MlpModel: zero layer width");
        }
    }
    if (!(alpha_ >= 0.0 && alpha_ <= 1.0)) {
        throw InvalidInput("MlpModel: leaky-ReLU slope must lie in [0, 1]");
    }
    std::size_t offset = 0;
    for (std::size_t l = 0; l + 1 < widths_.size(); ++l) {
        Layer layer;
        layer.in = widths_[l];
        layer.out = widths_[l + 1];
        layer.weight_offset = offset;
        offset += layer.in * layer.out;
        layer.bias_offset = offset;
        offset += layer.out;
        layers_.push_back(layer);
    }
    parameter_count_ = offset;
}

Vector MlpModel::initial_parameters(RngStream& rng) const
{
    Vector theta = Vector::Zero(static_cast<Eigen::Index>(parameter_count_));
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        const Layer& layer = layers_[l];
        const bool last = l + 1 == layers_.size();
        const double scale = std::sqrt((last ? 1.0 : 2.0) / static_cast<double>(layer.in));
        for (std::size_t i = 0; i < layer.in * layer.out; ++i) {
            theta[static_cast<Eigen::Index>(layer.weight_offset + i)] = scale * rng.normal();
        }
    }
    return theta;
}

std::size_t input_dim(const RewardModel& model)
{
    return std::visit(
        [](const auto& m) -> std::size_t {
            if constexpr (std::is_same_v<std::decay_t<decltype(m)>, MlpModel>) {
                return m.input_dim();
            } else {
                return m.dim;
            }
        },
        model);
}

std::size_t parameter_count(const RewardModel& model)
{
    return std::visit(
        [](const auto& m) -> std::size_t {
            if constexpr (std::is_same_v<std::decay_t<decltype(m)>, MlpModel>) {
                return m.parameter_count();
            } else {
                return m.dim;
            }
        },
        model);
}

namespace {

void check_dims(const RewardModel& model, std::size_t x_dim, const Vector& theta)
{
    if (x_dim != input_dim(model) || static_cast<std::size_t>(theta.size()) != parameter_count(model)) {
        std::ostringstream msg;
        msg << "predict: dimension mismatch (input " << x_dim << " vs " << input_dim(model) << ", parameters "
            << theta.size() << " vs " << parameter_count(model) << ")";
        throw InvalidInput(msg.str());
    }
}

} // namespace

double predict(const RewardModel& model, std::span<const double> x, const Vector& theta)
{
    check_dims(model, x.size(), theta);
    double out = 0.0;
    predict_batch(model, x, 1, theta, {&out, 1});
    return out;
}

void predict_batch(const RewardModel& model, std::span<const double> rows, std::size_t n, const Vector& theta,
                   std::span<double> out)
{
    const std::size_t d = input_dim(model);
    if (rows.size() != n * d || out.size() != n) {
        throw InvalidInput("predict_batch: batch shape mismatch");
    }
    check_dims(model, d, theta);
    std::visit(
        [&](const auto& m) {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, LinearModel>) {
                simd::gemv_rows(rows, n, d, as_span(theta), out);
            } else if constexpr (std::is_same_v<M, GlmModel>) {
                simd::gemv_rows(rows, n, d, as_span(theta), out);
                if (m.link == Link::logistic) {
                    simd::logistic(out, out);
                }
            } else {
                mlp::ForwardCache cache;
                const auto f = mlp::forward(m, rows, n, theta, cache);
                std::copy(f.begin(), f.end(), out.begin());
            }
        },
        model);
}

namespace mlp {

std::span<const double> forward(const MlpModel& model, std::span<const double> x, std::size_t n, const Vector& theta,
                                ForwardCache& cache)
{
    const auto& layers = model.layers();
    cache.pre.resize(layers.size());
    cache.post.resize(layers.size() + 1);
    cache.post[0].assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n * model.input_dim()));
    const double* p = theta.data();
    for (std::size_t l = 0; l < layers.size(); ++l) {
        const auto& layer = layers[l];
        // W is out x in row-major; the kernel wants in x out
        cache.wt.resize(layer.in * layer.out);
        const double* w = p + layer.weight_offset;
        for (std::size_t j = 0; j < layer.out; ++j) {
            for (std::size_t k = 0; k < layer.in; ++k) {
                cache.wt[k * layer.out + j] = w[j * layer.in + k];
            }
        }
        auto& z = cache.pre[l];
        z.resize(n * layer.out);
        simd::dense_forward(cache.wt, {p + layer.bias_offset, layer.out}, layer.in, layer.out, cache.post[l], n, z);
        auto& a = cache.post[l + 1];
        a.resize(z.size());
        if (l + 1 < layers.size()) {
            simd::leaky_relu(z, model.alpha(), a);
        } else {
            std::copy(z.begin(), z.end(), a.begin());
        }
    }
    return cache.post.back();
}

void backward(const MlpModel& model, const Vector& theta, std::size_t n, std::span<const double> seed,
              ForwardCache& cache, Vector& grad)
{
    const auto& layers = model.layers();
    const double* p = theta.data();
    std::vector<double> dz(seed.begin(), seed.end());
    std::vector<double> da;
    for (std::size_t li = layers.size(); li-- > 0;) {
        const auto& layer = layers[li];
        const bool need_da = li > 0;
        da.assign(need_da ? n * layer.in : 0, 0.0);
        simd::dense_backward({p + layer.weight_offset, layer.in * layer.out}, layer.in, layer.out, cache.post[li], dz,
                             n, {grad.data() + layer.weight_offset, layer.in * layer.out},
                             {grad.data() + layer.bias_offset, layer.out}, da);
        if (need_da) {
            simd::leaky_relu_backward(cache.pre[li - 1], model.alpha(), da);
            dz.swap(da);
        }
    }
}

} // namespace mlp

} // namespace lmcts
