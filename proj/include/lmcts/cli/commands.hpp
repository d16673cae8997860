#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lmcts/cli/config.hpp"
#include "lmcts/sampler/closed_form.hpp"

namespace lmcts {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int config = 1;
inline constexpr int runtime = 2;
inline constexpr int diagnostic = 3;
} // namespace exit_code

struct CliOptions {
    std::optional<std::string> out;
    std::optional<std::size_t> jobs;
    std::uint64_t seed_offset = 0;
};

// Applies --out, --jobs and --seed-offset on top of a parsed config.
ExperimentConfig apply_options(ExperimentConfig cfg, const CliOptions& opt);

struct DiagnoseReport {
    GaussianLaw oracle;
    Vector empirical_mean;
    Matrix empirical_cov;
    double max_z_mean = 0.0;
    double max_z_cov = 0.0;
    std::vector<std::string> offending; // entries with |z| above the threshold
    bool passed = false;
};

// Runs cfg.chains independent LMC chains over a frozen random linear
// history of cfg.rounds rounds and compares the final iterates with
// closed_form_law. z-scores use the empirical moments: the mean entry's
// standard error is sqrt(S_jj / N), the covariance entry's is
// sqrt((S_jj S_kk + S_jk^2) / N). A zero error with zero difference counts
// as z = 0.
DiagnoseReport run_diagnose(const DiagnoseConfig& cfg);

// Rows of a sweep summary, ranked by final mean cumulative regret.
struct SweepRow {
    std::size_t cell = 0;
    std::vector<std::string> values;
    double final_mean = 0.0;
    double final_stderr = 0.0;
};

// Subcommands. Each returns an exit code and reports to err.
int cmd_simulate(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_diagnose(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);

// Loads the config at path, applies options and dispatches to the named
// subcommand. Config errors map to exit code 1, runtime errors to 2.
int run_command(const std::string& command, const std::string& path, const CliOptions& opt, std::ostream& out,
                std::ostream& err);

} // namespace lmcts
