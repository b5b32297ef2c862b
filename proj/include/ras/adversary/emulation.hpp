#pragma once

#include "ras/adversary/duplication.hpp"
#include "ras/priors.hpp"

namespace ras
{
    // D is a ring of `honest_side` agents; the cheater is adjacent to all
    // of them. Returns the topology; the cheater is the node at index 0.
    NetworkTopology emulation_topology(std::size_t honest_side, std::uint64_t k, std::uint64_t seed);

    struct EmulationRun
    {
        CheaterVerdict verdict;
        bool flipped = false;         // an alternative emulated run was adopted
        std::size_t explored = 0;     // search-tree nodes visited
    };

    // Flood Knowledge Sharing where the cheater poses as `emulated_size`
    // nodes (two frontiers plus an internal path). With `search`, once it
    // has heard every input of D it looks, breadth-first over edits of its
    // emulated inputs, for a re-simulation that repeats every message it
    // has already sent and makes the sum equal its preference.
    EmulationRun run_emulation_attack(const NetworkTopology& real, AgentId cheater, std::uint64_t preference,
                                      std::size_t emulated_size, std::uint64_t k, const PriorSpec& prior,
                                      std::uint64_t seed, bool search, std::size_t node_budget = 4096);
}
