#include "lmcts/agents/agent.hpp"

#include <sstream>

#include "lmcts/core/error.hpp"

namespace lmcts {

void Agent::update(std::span<const double> x, double reward)
{
    history_.observe(x, reward);
}

void Agent::check_arms(const ArmSet& arms) const
{
    if (arms.empty()) {
        throw InvalidInput(std::string(name()) + ": empty arm set");
    }
    if (arms.dim() != history_.dim()) {
        std::ostringstream msg;
        msg << name() << ": arm dimension " << arms.dim() << " != " << history_.dim();
        throw InvalidInput(msg.str());
    }
}

std::size_t UniformAgent::select(const ArmSet& arms)
{
    check_arms(arms);
    return static_cast<std::size_t>(rng_.uniform_index(arms.size()));
}

} // namespace lmcts
