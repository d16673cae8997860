#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "lmcts/agents/factory.hpp"
#include "lmcts/harness/runner.hpp"

namespace lmcts {

struct RunConfig {
    std::size_t horizon = 1000;
    std::vector<std::uint64_t> seeds{1};
    std::string tag = "experiment";
    std::string out = "./results";
    std::size_t jobs = 1;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

struct DiagnoseConfig {
    std::size_t dim = 2;
    std::size_t rounds = 3;
    std::size_t chains = 100000;
    std::size_t epoch_length = 5;
    double beta = 2.0;
    // eta = eta_scale / lambda_max(V) in every round
    double eta_scale = 0.25;
    double threshold = 4.0;
    // Feed the oracle half the step size the chains use.
    bool mismatch = false;
    std::uint64_t seed = 1;

    friend bool operator==(const DiagnoseConfig&, const DiagnoseConfig&) = default;
};

// One [grid] line: "section.key = v1, v2, ...".
struct GridAxis {
    std::string key;
    std::vector<std::string> values;

    friend bool operator==(const GridAxis&, const GridAxis&) = default;
};

struct ExperimentConfig {
    EnvConfig env;
    AgentConfig agent;
    RunConfig run;
    DiagnoseConfig diagnose;
    std::vector<GridAxis> grid;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// Parses INI text with sections [env], [agent], [run], [diagnose], [grid].
// Unknown sections, unknown keys and malformed values raise ConfigError
// naming "section.key".
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

// Sets one field from its text form; used by the parser and by sweeps.
void set_field(ExperimentConfig& cfg, const std::string& section, const std::string& key, const std::string& value);
void set_field(ExperimentConfig& cfg, const std::string& dotted_key, const std::string& value);

// Every field as ("section.key", text); parse_config(to_ini(entries(c)))
// reproduces c.
std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& cfg);
std::string to_ini(const ExperimentConfig& cfg);

} // namespace lmcts
