#pragma once

#include "ras/engine.hpp"
#include "ras/node_logic.hpp"
#include "ras/protocols/legality.hpp"

#include <memory>
#include <optional>

namespace ras
{
    struct ProtocolParams
    {
        std::uint64_t k = 2;                    // Knowledge Sharing output space
        std::uint64_t colors = 3;               // coloring preference domain
        std::optional<std::size_t> size_bound;  // beta: agents abort when n' exceeds it
        std::optional<std::size_t> known_n;     // witness coloring; defaults to the topology size
        bool flood_ks = false;                  // general-graph Knowledge Sharing
        Round max_rounds = 20'000;
    };

    // Honest logic for one node.
    std::unique_ptr<NodeLogic> make_logic(Problem problem, const NodeSpec& spec, const std::vector<AgentId>& neighbors,
                                          const ProtocolParams& params, RngStream rng);

    // What the agent wants as output: 1 for leader election, otherwise its preference.
    std::uint64_t preferred_output(Problem problem, const NodeSpec& spec, const ProtocolParams& params);

    // Per-node random stream for a run.
    RngStream node_stream(std::uint64_t seed, AgentId node);

    // All agents honest; legality applied.
    ExecutionTrace run_honest(Problem problem, const NetworkTopology& t, const ProtocolParams& params,
                              std::uint64_t seed, bool record_messages = false);

    ExecutionTrace ks_ring(const NetworkTopology& t, std::uint64_t k, std::uint64_t seed);
}
