#include "ras/cli/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    CLI::App app{"Rational agents under Sybil duplication: simulator and analysis"};
    app.require_subcommand(1);

    std::string config;
    ras::Overrides overrides;
    std::string chosen;
    for (const char* name : {"run", "sweep", "thresholds", "attack-demo"})
    {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config, "scenario JSON")->required()->check(CLI::ExistingFile);
        sub->add_option("--seed", overrides.seed);
        sub->add_option("--trials", overrides.trials)->check(CLI::PositiveNumber);
        sub->add_option("--out", overrides.out);
        sub->callback([&chosen, name] { chosen = name; });
    }
    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return ras::run_command(chosen, config, overrides, std::cout, std::cerr);
}
