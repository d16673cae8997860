#pragma once

#include <vector>

#include "lmcts/agents/agent.hpp"
#include "lmcts/models/loss.hpp"
#include "lmcts/models/model.hpp"

namespace lmcts {

struct NeuralTraining {
    std::size_t steps = 100;
    double learning_rate = 0.01;
    // 0 means full gradients.
    std::size_t batch_size = 0;
};

// Plain gradient descent on the regularized squared loss of a network,
// theta <- theta - lr * grad / n with n the transcript length. Mini-batch
// steps draw their subset from rng. Throws DivergenceError when the
// parameters blow up.
class NeuralTrainer {
public:
    explicit NeuralTrainer(NeuralTraining cfg) : cfg_(cfg) {}

    const NeuralTraining& config() const noexcept { return cfg_; }
    void train(const LossSpec& spec, Vector& theta, RngStream& rng);

private:
    NeuralTraining cfg_;
    GradientEvaluator eval_;
    Vector grad_;
    std::vector<std::size_t> pool_;
    std::vector<std::size_t> batch_;
};

// Epsilon-greedy over a network trained after every observation.
class NeuralEpsGreedyAgent final : public Agent {
public:
    NeuralEpsGreedyAgent(MlpModel model, double lambda, double c, NeuralTraining training, RngStream rng,
                         Vector theta0);

    std::string_view name() const override { return "neural_egreedy"; }
    std::size_t select(const ArmSet& arms) override;
    void update(std::span<const double> x, double reward) override;

    const Vector& theta() const noexcept { return theta_; }

private:
    RewardModel model_;
    double lambda_;
    double c_;
    NeuralTrainer trainer_;
    Vector theta_;
    std::vector<double> scores_;
};

} // namespace lmcts
