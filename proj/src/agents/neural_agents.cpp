#include "lmcts/agents/neural_agents.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "lmcts/core/error.hpp"
#include "lmcts/sampler/lmc.hpp"

namespace lmcts {

void NeuralTrainer::train(const LossSpec& spec, Vector& theta, RngStream& rng)
{
    const std::size_t n = spec.history().round();
    if (n == 0 || cfg_.steps == 0) {
        return;
    }
    const bool subsample = cfg_.batch_size > 0 && n > cfg_.batch_size;
    if (subsample) {
        pool_.resize(n);
        std::iota(pool_.begin(), pool_.end(), std::size_t{0});
    }
    const double step = cfg_.learning_rate / static_cast<double>(n);
    for (std::size_t k = 0; k < cfg_.steps; ++k) {
        if (subsample) {
            for (std::size_t i = 0; i < cfg_.batch_size; ++i) {
                const std::size_t j = i + static_cast<std::size_t>(rng.uniform_index(n - i));
                std::swap(pool_[i], pool_[j]);
            }
            batch_.assign(pool_.begin(), pool_.begin() + static_cast<std::ptrdiff_t>(cfg_.batch_size));
            eval_.gradient_subset(spec, theta, batch_, grad_);
        } else {
            eval_.gradient(spec, theta, grad_);
        }
        theta.noalias() -= step * grad_;
        if (!(theta.cwiseAbs().maxCoeff() <= kDivergenceBound)) {
            std::ostringstream msg;
            msg << "network training diverged at step " << k + 1 << " (learning rate " << cfg_.learning_rate
                << "); reduce the learning rate";
            throw DivergenceError(msg.str());
        }
    }
}

NeuralEpsGreedyAgent::NeuralEpsGreedyAgent(MlpModel model, double lambda, double c, NeuralTraining training,
                                           RngStream rng, Vector theta0)
    : Agent(model.input_dim(), lambda, std::move(rng)), model_(std::move(model)), lambda_(lambda), c_(c),
      trainer_(training), theta_(std::move(theta0))
{
    if (!(c >= 0.0) || !(lambda > 0.0) || !(training.learning_rate > 0.0)) {
        throw InvalidInput("neural_egreedy: need c >= 0, lambda > 0, learning rate > 0");
    }
    if (static_cast<std::size_t>(theta_.size()) != parameter_count(model_)) {
        throw InvalidInput("neural_egreedy: initial parameters do not match the model");
    }
}

std::size_t NeuralEpsGreedyAgent::select(const ArmSet& arms)
{
    check_arms(arms);
    const double eps = std::min(1.0, c_ / std::sqrt(static_cast<double>(round())));
    if (rng_.uniform() < eps) {
        return static_cast<std::size_t>(rng_.uniform_index(arms.size()));
    }
    scores_.resize(arms.size());
    predict_batch(model_, arms.data(), arms.size(), theta_, scores_);
    return argmax_lowest(scores_);
}

void NeuralEpsGreedyAgent::update(std::span<const double> x, double reward)
{
    Agent::update(x, reward);
    const LossSpec spec(model_, history_, lambda_);
    trainer_.train(spec, theta_, rng_);
}

} // namespace lmcts
