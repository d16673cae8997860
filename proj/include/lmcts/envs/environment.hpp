#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "lmcts/core/types.hpp"

namespace lmcts {

// Result of pulling one arm. regret = best_expected - chosen_expected.
struct RoundOutcome {
    double reward = 0.0;
    double chosen_expected = 0.0;
    double best_expected = 0.0;
    double regret = 0.0;
};

struct OracleChoice {
    std::size_t index = 0;
    double expected = 0.0;
};

// A bandit problem. Rounds are presented in order t = 1, 2, ...; arms(t) must
// be called before pull for that round.
class Environment {
public:
    virtual ~Environment() = default;

    virtual std::size_t dim() const = 0;
    // Arm set of round t, or nothing once the environment is exhausted.
    virtual std::optional<ArmSet> arms(std::size_t t) = 0;
    // Realized and expected rewards for arm `index` of the current round.
    virtual RoundOutcome pull(const ArmSet& arms, std::size_t index) = 0;
    // Arm with the largest expected reward; ties go to the lowest index.
    virtual OracleChoice oracle_best(const ArmSet& arms) const = 0;
    // Flat description for result metadata.
    virtual std::map<std::string, std::string> describe() const = 0;
};

} // namespace lmcts
