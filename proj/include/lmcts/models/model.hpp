#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "lmcts/core/rng.hpp"
#include "lmcts/core/types.hpp"

namespace lmcts {

// f(x, theta) = x^T theta
struct LinearModel {
    std::size_t dim = 0;
};

enum class Link { identity, logistic };

// f(x, theta) = mu(x^T theta) for a monotone link mu with cumulant m (m' = mu).
struct GlmModel {
    std::size_t dim = 0;
    Link link = Link::logistic;

    double mean(double z) const;
    double mean_derivative(double z) const;
    // identity: z^2 / 2; logistic: log(1 + e^z) evaluated without overflow
    double cumulant(double z) const;
};

// Fully connected network with leaky-ReLU hidden activations and a scalar
// linear output. Parameters are one flat vector: for each layer in order,
// the weight matrix (out x in, row-major) followed by the bias (out).
class MlpModel {
public:
    struct Layer {
        std::size_t in = 0;
        std::size_t out = 0;
        std::size_t weight_offset = 0;
        std::size_t bias_offset = 0;
    };

    // widths = [input, hidden..., 1]; alpha is the negative-side slope
    // (0 gives ReLU, 1 makes the network linear).
    MlpModel(std::vector<std::size_t> widths, double alpha);

    std::size_t input_dim() const noexcept { return widths_.front(); }
    std::size_t parameter_count() const noexcept { return parameter_count_; }
    const std::vector<std::size_t>& widths() const noexcept { return widths_; }
    const std::vector<Layer>& layers() const noexcept { return layers_; }
    double alpha() const noexcept { return alpha_; }

    // He-style random initialization: weights N(0, 2/in) for hidden layers,
    // N(0, 1/in) for the output layer, zero biases.
    Vector initial_parameters(RngStream& rng) const;

    friend bool operator==(const MlpModel&, const MlpModel&) = default;

private:
    std::vector<std::size_t> widths_;
    double alpha_;
    std::vector<Layer> layers_;
    std::size_t parameter_count_ = 0;
};

using RewardModel = std::variant<LinearModel, GlmModel, MlpModel>;

std::size_t input_dim(const RewardModel& model);
std::size_t parameter_count(const RewardModel& model);

double predict(const RewardModel& model, std::span<const double> x, const Vector& theta);
// Scores for every arm of a row-major batch (rows x input_dim).
void predict_batch(const RewardModel& model, std::span<const double> rows, std::size_t n, const Vector& theta,
                   std::span<double> out);

namespace mlp {

// Activations cached by a forward pass over a batch.
struct ForwardCache {
    std::vector<std::vector<double>> pre;  // Z_l, n x out_l
    std::vector<std::vector<double>> post; // A_l, n x out_l (A_0 is the input)
    std::vector<double> wt;                // scratch for transposed weights
};

// Forward pass; returns a span over the n outputs inside the cache.
std::span<const double> forward(const MlpModel& model, std::span<const double> x, std::size_t n, const Vector& theta,
                                ForwardCache& cache);

// Accumulates sum_i seed_i * d f(x_i) / d theta into grad, using the cache
// from the matching forward call.
void backward(const MlpModel& model, const Vector& theta, std::size_t n, std::span<const double> seed,
              ForwardCache& cache, Vector& grad);

} // namespace mlp

} // namespace lmcts
