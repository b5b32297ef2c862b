#pragma once

#include "ras/engine.hpp"
#include "ras/priors.hpp"
#include "ras/topology.hpp"

#include <vector>

namespace ras
{
    enum class DuplicationMode : std::uint8_t
    {
        Fixed,
        AdaptiveUntilNKnown,
    };

    struct DuplicationScheme
    {
        AgentId cheater = 0;
        std::size_t d = 1;
        DuplicationMode mode = DuplicationMode::Fixed;
    };

    // Execution graph seen by the honest agents. The cheater's edges are split
    // between two frontier nodes (first ceil(deg/2) neighbors to the first
    // frontier, the rest to the second) joined by an internal path; on a ring
    // this is a segment of d consecutive nodes. The first virtual node keeps
    // the cheater's id.
    struct ExpandedTopology
    {
        NetworkTopology graph;
        DuplicationScheme scheme;
        std::vector<AgentId> virtual_nodes; // along the internal path, frontier to frontier
    };

    // Throws InvalidScheme for d = 0 or an unknown cheater. d = 1 returns t unchanged.
    ExpandedTopology apply_duplication(const NetworkTopology& t, const DuplicationScheme& scheme, std::uint64_t seed);

    struct CheaterVerdict
    {
        bool detected = false;
        int cheater_utility = 0;
        ExecutionTrace trace;
        std::size_t n_prime = 0;
    };
}
