#pragma once

#include "ras/cli/scenario.hpp"

#include <iosfwd>

namespace ras
{
    // Command-line overrides; they win over the config file.
    struct Overrides
    {
        std::optional<std::uint64_t> seed;
        std::optional<std::size_t> trials;
        std::optional<std::filesystem::path> out;
    };

    void apply_overrides(ScenarioConfig& cfg, const Overrides& o);

    // Each prints a short report to `out` and writes the file output when a
    // path is configured. They throw SchemaError on inconsistent configs.
    void cmd_run(const ScenarioConfig& cfg, std::ostream& out);
    void cmd_sweep(const ScenarioConfig& cfg, std::ostream& out);
    void cmd_thresholds(const ScenarioConfig& cfg, std::ostream& out);
    void cmd_attack_demo(const ScenarioConfig& cfg, std::ostream& out);

    // Exit status: 0 ok, 1 other failure, 2 schema error, 3 runaway protocol.
    int run_command(const std::string& command, const std::filesystem::path& config, const Overrides& o,
                    std::ostream& out, std::ostream& err);
}
