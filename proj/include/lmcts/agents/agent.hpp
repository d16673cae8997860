#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "lmcts/core/history.hpp"
#include "lmcts/core/rng.hpp"
#include "lmcts/core/types.hpp"

namespace lmcts {

// Stateful arm-selection policy. The harness drives every agent through
// select -> (environment pull) -> update, once per round.
class Agent {
public:
    virtual ~Agent() = default;
    Agent(const Agent&) = delete;
    Agent& operator=(const Agent&) = delete;

    virtual std::string_view name() const = 0;

    // Picks an arm for round t = history().round() + 1. Ties go to the
    // lowest index.
    virtual std::size_t select(const ArmSet& arms) = 0;

    // Records the observed reward of the chosen arm.
    virtual void update(std::span<const double> x, double reward);

    // How the agent reuses dense factorizations across calls.
    virtual std::string cache_policy() const { return "none"; }

    const History& history() const noexcept { return history_; }
    // 1-based index of the round about to be played.
    std::size_t round() const noexcept { return history_.round() + 1; }

protected:
    Agent(std::size_t dim, double lambda, RngStream rng) : history_(dim, lambda), rng_(std::move(rng)) {}

    void check_arms(const ArmSet& arms) const;

    History history_;
    RngStream rng_;
};

// Chooses uniformly at random; the regret floor used in sanity checks.
class UniformAgent final : public Agent {
public:
    UniformAgent(std::size_t dim, RngStream rng) : Agent(dim, 1.0, std::move(rng)) {}
    std::string_view name() const override { return "uniform"; }
    std::size_t select(const ArmSet& arms) override;
};

} // namespace lmcts
