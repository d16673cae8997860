#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "lmcts/agents/agent.hpp"
#include "lmcts/agents/lmcts_agent.hpp"

namespace lmcts {

// Flat agent description; the fields a variant does not use are ignored.
struct AgentConfig {
    // lmcts | lints | linucb | egreedy | ucbglm | glmtsl | neural_egreedy | uniform
    std::string variant = "lmcts";
    // linear | logistic | mlp (lmcts, egreedy); the GLM agents take logistic
    // or identity.
    std::string model = "linear";
    double lambda = 1.0;

    // lmcts
    std::string schedule = "practical"; // practical | theory
    double eta0 = 0.5;
    double beta_inv = 0.01;
    std::size_t epoch_length = 100;
    std::size_t batch_size = 0;
    double theory_r = 1.0;
    double theory_delta = 0.1;

    // lints v-scale, linucb / ucbglm width, egreedy rate
    double c = 1.0;
    // glmtsl covariance scale
    double a = 1.0;
    int mle_iters = 50;
    double mle_tol = 1e-6;

    // networks (lmcts with model = mlp, neural_egreedy)
    std::vector<std::size_t> hidden{20, 20, 20};
    double leaky_alpha = 0.01;
    std::size_t train_steps = 100;
    double learning_rate = 0.01;

    // Throws ConfigError for unknown variants/models or out-of-range values.
    void validate() const;

    friend bool operator==(const AgentConfig&, const AgentConfig&) = default;
};

// Builds the agent for contexts of dimension dim over a horizon of T rounds.
// Agent randomness comes from stream `agent` of the seed; network
// initialization from stream `model_init`.
std::unique_ptr<Agent> make_agent(const AgentConfig& cfg, std::size_t dim, std::size_t horizon, std::uint64_t seed);

std::vector<std::string> agent_variants();

} // namespace lmcts
