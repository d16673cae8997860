#include "lmcts/agents/lmcts_agent.hpp"

#include "lmcts/core/error.hpp"
#include "lmcts/models/loss.hpp"

namespace lmcts {

LmctsAgent::LmctsAgent(RewardModel model, LmctsOptions options, RngStream rng, Vector theta0)
    : Agent(input_dim(model), options.lambda, std::move(rng)), model_(std::move(model)), options_(options),
      sampler_(options.batch_size)
{
    if (static_cast<std::size_t>(theta0.size()) != parameter_count(model_)) {
        throw InvalidInput("lmcts: initial parameters do not match the model");
    }
    chain_.theta = std::move(theta0);
}

std::size_t LmctsAgent::select(const ArmSet& arms)
{
    check_arms(arms);
    const std::size_t t = round();
    const LmcSchedule sched = options_.mode == ScheduleMode::practical
                                  ? options_.practical.at(t)
                                  : theory_schedule(history_.gram(), options_.theory);
    const LossSpec spec(model_, history_, options_.lambda);
    // observations replayed without a selection still warm-start the chain
    chain_.round = history_.round();
    sampler_.run_epoch(chain_, spec, sched, rng_);
    log_.push_back(sched);

    scores_.resize(arms.size());
    predict_batch(model_, arms.data(), arms.size(), chain_.theta, scores_);
    return argmax_lowest(scores_);
}

} // namespace lmcts
