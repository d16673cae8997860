#pragma once

#include <vector>

#include "lmcts/agents/agent.hpp"
#include "lmcts/models/model.hpp"
#include "lmcts/sampler/lmc.hpp"
#include "lmcts/sampler/schedule.hpp"

namespace lmcts {

enum class ScheduleMode { practical, theory };

struct LmctsOptions {
    ScheduleMode mode = ScheduleMode::practical;
    PracticalSchedule practical;
    TheoryParams theory;
    double lambda = 1.0;
    // 0 means full gradients.
    std::size_t batch_size = 0;
};

// Langevin Monte Carlo Thompson sampling. Each selection runs one warm-started
// LMC epoch on the loss of the current history and plays the argmax of the
// model at the final iterate. The selection path forms no d x d inverse or
// factorization.
class LmctsAgent final : public Agent {
public:
    // theta0 must match the model's parameter count.
    LmctsAgent(RewardModel model, LmctsOptions options, RngStream rng, Vector theta0);

    std::string_view name() const override { return "lmcts"; }
    std::size_t select(const ArmSet& arms) override;

    const RewardModel& model() const noexcept { return model_; }
    const LmctsOptions& options() const noexcept { return options_; }
    const ChainState& chain() const noexcept { return chain_; }
    const Vector& theta() const noexcept { return chain_.theta; }
    // Schedule used in each round so far.
    const std::vector<LmcSchedule>& schedule_log() const noexcept { return log_; }
    // Scores of the last selection.
    const std::vector<double>& last_scores() const noexcept { return scores_; }

private:
    RewardModel model_;
    LmctsOptions options_;
    LangevinSampler sampler_;
    ChainState chain_;
    std::vector<LmcSchedule> log_;
    std::vector<double> scores_;
};

} // namespace lmcts
