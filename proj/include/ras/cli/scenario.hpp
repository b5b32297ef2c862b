#pragma once

#include "ras/analysis/montecarlo.hpp"
#include "ras/analysis/thresholds.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace ras
{
    enum class OutputFormat : std::uint8_t
    {
        Json,
        Csv,
    };

    struct AdversaryConfig
    {
        Strategy strategy = Strategy::Honest;
        std::size_t d = 1;
        std::size_t cheater = 0; // index into the node list
        std::size_t honest_side = 3;
    };

    struct SweepMatrix
    {
        std::vector<PriorSpec> priors;
        std::vector<std::uint64_t> ks;
        std::vector<std::size_t> ds;
    };

    struct ScenarioConfig
    {
        std::optional<Problem> problem;
        // File topology, or a ring size (inputs drawn per run); neither
        // means sizes come from the prior.
        std::optional<NetworkTopology> topology;
        std::optional<std::size_t> ring_n;
        std::optional<PriorSpec> prior;
        std::optional<std::uint64_t> k;
        std::optional<std::uint64_t> colors;
        std::optional<AdversaryConfig> adversary;
        std::optional<std::uint32_t> max_rounds; // run only
        std::size_t trials = 1;
        std::uint64_t seed = 0;
        std::optional<std::filesystem::path> output_path;
        OutputFormat format = OutputFormat::Json;
        std::optional<SweepMatrix> sweep;
        ThresholdRanges ranges;

        std::uint64_t k_or_default() const { return k.value_or(2); }
        std::uint64_t colors_or_default() const { return colors.value_or(3); }
        // Scenario for the Monte-Carlo layer; strategy from the adversary block.
        Scenario scenario() const;
        // The file topology, or a fresh ring of ring_n nodes.
        NetworkTopology network(std::uint64_t run_seed) const;
    };

    // Parses and validates one JSON document. Throws SchemaError listing
    // every problem found. Relative topology file paths resolve against
    // `base_dir`.
    ScenarioConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {});
    ScenarioConfig load_config(const std::filesystem::path& path);

    // Topology file: {"nodes":[{"id","input","preference"}], "edges":[[a,b],...]}.
    NetworkTopology parse_topology(const std::string& text);
}
