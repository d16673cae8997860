#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "lmcts/agents/factory.hpp"
#include "lmcts/envs/dataset.hpp"
#include "lmcts/envs/synthetic.hpp"

namespace lmcts {

struct EnvConfig {
    std::string kind = "linear"; // linear | logistic | quadratic | dataset
    std::size_t dim = 10;
    std::size_t arms = 20;
    bool changing = false;
    double noise_variance = -1.0; // < 0: kind default

    // dataset kind
    std::string path;
    std::string spec; // name of a declared spec to verify against, optional
    char delimiter = ',';
    bool header = false;
    int label_base = 0;
    bool normalize = true;
    std::size_t classes = 0;
    bool wrap = false;

    void validate() const;

    friend bool operator==(const EnvConfig&, const EnvConfig&) = default;
};

// Builds one environment per seed. A dataset is loaded once and shared.
class EnvFactory {
public:
    explicit EnvFactory(EnvConfig cfg);

    std::unique_ptr<Environment> make(std::uint64_t seed) const;
    std::size_t dim() const noexcept { return dim_; }
    const EnvConfig& config() const noexcept { return cfg_; }

private:
    EnvConfig cfg_;
    std::shared_ptr<const Dataset> data_;
    std::size_t dim_ = 0;
};

// Per-round outcomes of one run. Times are seconds on a monotonic clock.
struct RunRecord {
    std::uint64_t seed = 0;
    std::size_t requested_rounds = 0;
    std::vector<std::size_t> chosen;
    std::vector<double> reward;
    std::vector<double> regret;
    std::vector<double> cum_regret;
    std::vector<double> select_s;
    std::vector<double> update_s;
    std::string cache_policy;
    bool truncated = false;

    std::size_t rounds() const noexcept { return chosen.size(); }
};

// Executes select -> pull -> update for T rounds. Stops early, flagging the
// record as truncated, when the environment runs out of rounds. Errors are
// rethrown as RunFailure naming the seed and round.
RunRecord run_one(const AgentConfig& agent, const EnvFactory& env, std::size_t horizon, std::uint64_t seed);

struct Aggregate {
    std::size_t n = 0;
    std::vector<double> mean;   // mean cumulative regret per round
    std::vector<double> std_error; // sample std / sqrt(n); 0 when n == 1
};

// Mean and standard error of cumulative regret across records, over the
// rounds all records share.
Aggregate aggregate(const std::vector<RunRecord>& records);

struct BatchResult {
    Aggregate agg;
    std::vector<RunRecord> records; // successful runs, in seed order
    std::vector<std::uint64_t> failed_seeds;
    std::vector<std::string> failures;
    double wall_s = 0.0;
};

// run_one over distinct seeds on up to `jobs` threads. Results are ordered
// by the seed list regardless of scheduling. Throws InvalidInput on
// repeated seeds and RunFailure if every seed fails.
BatchResult run_many(const AgentConfig& agent, const EnvFactory& env, std::size_t horizon,
                     const std::vector<std::uint64_t>& seeds, std::size_t jobs = 1);

} // namespace lmcts
