#include "lmcts/agents/factory.hpp"

#include <algorithm>
#include <cmath>

#include "lmcts/agents/glm_agents.hpp"
#include "lmcts/agents/linear_agents.hpp"
#include "lmcts/agents/neural_agents.hpp"
#include "lmcts/core/error.hpp"

namespace lmcts {

std::vector<std::string> agent_variants()
{
    return {"lmcts", "lints", "linucb", "egreedy", "ucbglm", "glmtsl", "neural_egreedy", "uniform"};
}

namespace {

[[noreturn]] void bad(const std::string& what)
{
    throw ConfigError("agent: " + what);
}

bool positive(double x)
{
    return x > 0.0 && std::isfinite(x);
}

bool nonnegative(double x)
{
    return x >= 0.0 && std::isfinite(x);
}

GlmModel glm_of(const AgentConfig& cfg, std::size_t dim)
{
    if (cfg.model == "logistic") {
        return GlmModel{dim, Link::logistic};
    }
    if (cfg.model == "identity") {
        return GlmModel{dim, Link::identity};
    }
    bad("variant " + cfg.variant + " needs model = logistic or identity, got '" + cfg.model + "'");
}

MlpModel mlp_of(const AgentConfig& cfg, std::size_t dim)
{
    std::vector<std::size_t> widths{dim};
    widths.insert(widths.end(), cfg.hidden.begin(), cfg.hidden.end());
    widths.push_back(1);
    return MlpModel(std::move(widths), cfg.leaky_alpha);
}

} // namespace

void AgentConfig::validate() const
{
    const auto variants = agent_variants();
    if (std::find(variants.begin(), variants.end(), variant) == variants.end()) {
        bad("unknown variant '" + variant + "'");
    }
    if (!positive(lambda)) {
        bad("lambda must be > 0");
    }
    if (!nonnegative(c) || !nonnegative(a)) {
        bad("c and a must be >= 0");
    }
    if (variant == "lmcts") {
        if (model != "linear" && model != "logistic" && model != "mlp") {
            bad("lmcts model must be linear, logistic or mlp, got '" + model + "'");
        }
        if (schedule != "practical" && schedule != "theory") {
            bad("schedule must be practical or theory, got '" + schedule + "'");
        }
        if (schedule == "practical" && (!positive(eta0) || !nonnegative(beta_inv) || epoch_length == 0)) {
            bad("practical schedule needs eta0 > 0, beta_inv >= 0, epoch_length >= 1");
        }
        if (schedule == "theory" && (!positive(theory_r) || !(theory_delta > 0.0 && theory_delta < 1.0))) {
            bad("theory schedule needs theory_r > 0 and 0 < theory_delta < 1");
        }
    }
    if (variant == "egreedy" && model != "linear" && model != "logistic" && model != "identity") {
        bad("egreedy model must be linear, logistic or identity, got '" + model + "'");
    }
    if ((variant == "ucbglm" || variant == "glmtsl") && model != "logistic" && model != "identity") {
        bad(variant + " model must be logistic or identity, got '" + model + "'");
    }
    if (mle_iters < 0 || !positive(mle_tol)) {
        bad("mle_iters must be >= 0 and mle_tol > 0");
    }
    if (variant == "neural_egreedy" || (variant == "lmcts" && model == "mlp")) {
        if (hidden.empty() || std::find(hidden.begin(), hidden.end(), std::size_t{0}) != hidden.end()) {
            bad("hidden widths must be non-empty and positive");
        }
        if (!(leaky_alpha >= 0.0 && leaky_alpha <= 1.0)) {
            bad("leaky_alpha must lie in [0, 1]");
        }
    }
    if (variant == "neural_egreedy" && !positive(learning_rate)) {
        bad("learning_rate must be > 0");
    }
}

std::unique_ptr<Agent> make_agent(const AgentConfig& cfg, std::size_t dim, std::size_t horizon, std::uint64_t seed)
{
    cfg.validate();
    if (dim == 0) {
        bad("context dimension must be positive");
    }
    RngStream rng(seed, streams::agent);
    const MleOptions mle{cfg.mle_iters, cfg.mle_tol};

    if (cfg.variant == "lmcts") {
        LmctsOptions opt;
        opt.mode = cfg.schedule == "theory" ? ScheduleMode::theory : ScheduleMode::practical;
        opt.practical = PracticalSchedule{cfg.eta0, cfg.beta_inv, cfg.epoch_length};
        opt.theory = TheoryParams{cfg.theory_r, cfg.theory_delta, horizon};
        opt.lambda = cfg.lambda;
        opt.batch_size = cfg.batch_size;
        if (cfg.model == "mlp") {
            MlpModel net = mlp_of(cfg, dim);
            RngStream init(seed, streams::model_init);
            Vector theta0 = net.initial_parameters(init);
            return std::make_unique<LmctsAgent>(std::move(net), opt, std::move(rng), std::move(theta0));
        }
        RewardModel model = cfg.model == "logistic" ? RewardModel{GlmModel{dim, Link::logistic}}
                                                    : RewardModel{LinearModel{dim}};
        return std::make_unique<LmctsAgent>(std::move(model), opt, std::move(rng),
                                            Vector::Zero(static_cast<Eigen::Index>(dim)));
    }
    if (cfg.variant == "lints") {
        return std::make_unique<LinTsAgent>(dim, cfg.lambda, cfg.c, horizon, std::move(rng));
    }
    if (cfg.variant == "linucb") {
        return std::make_unique<LinUcbAgent>(dim, cfg.lambda, cfg.c, std::move(rng));
    }
    if (cfg.variant == "egreedy") {
        if (cfg.model == "linear") {
            return std::make_unique<EpsGreedyAgent>(dim, cfg.lambda, cfg.c, std::move(rng));
        }
        return std::make_unique<EpsGreedyAgent>(glm_of(cfg, dim), cfg.lambda, cfg.c, mle, std::move(rng));
    }
    if (cfg.variant == "ucbglm") {
        return std::make_unique<UcbGlmAgent>(glm_of(cfg, dim), cfg.lambda, cfg.c, mle, std::move(rng));
    }
    if (cfg.variant == "glmtsl") {
        return std::make_unique<GlmTslAgent>(glm_of(cfg, dim), cfg.lambda, cfg.a, mle, std::move(rng));
    }
    if (cfg.variant == "neural_egreedy") {
        MlpModel net = mlp_of(cfg, dim);
        RngStream init(seed, streams::model_init);
        Vector theta0 = net.initial_parameters(init);
        const NeuralTraining training{cfg.train_steps, cfg.learning_rate, cfg.batch_size};
        return std::make_unique<NeuralEpsGreedyAgent>(std::move(net), cfg.lambda, cfg.c, training, std::move(rng),
                                                      std::move(theta0));
    }
    return std::make_unique<UniformAgent>(dim, std::move(rng));
}

} // namespace lmcts
