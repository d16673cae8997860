#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lmcts/cli/commands.hpp"
#include "lmcts/version.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Langevin Monte Carlo Thompson sampling experiments"};
    app.set_version_flag("--version", lmcts::kVersion);
    app.require_subcommand(1);

    std::string config;
    std::string out;
    std::size_t jobs = 0;
    std::uint64_t seed_offset = 0;
    std::string chosen;

    const char* about[][2] = {{"simulate", "run every seed of a config and write regret curves"},
                              {"diagnose", "compare sampled chains against the exact Gaussian law"},
                              {"sweep", "run the Cartesian product of the [grid] section"}};
    for (const auto& [name, help] : about) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("config", config, "INI config file")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", out, "output directory (default ./results or run.out)");
        sub->add_option("--jobs", jobs, "seeds run in parallel")->check(CLI::PositiveNumber);
        sub->add_option("--seed-offset", seed_offset, "added to every seed");
        sub->callback([&chosen, n = std::string(name)] { chosen = n; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : lmcts::exit_code::config;
    }

    lmcts::CliOptions opt;
    if (!out.empty()) {
        opt.out = out;
    }
    if (jobs > 0) {
        opt.jobs = jobs;
    }
    opt.seed_offset = seed_offset;
    return lmcts::run_command(chosen, config, opt, std::cout, std::cerr);
}
