#pragma once

#include "ras/adversary/duplication.hpp"
#include "ras/priors.hpp"

namespace ras
{
    struct KsSybilResult
    {
        CheaterVerdict verdict;
        bool forced = false; // the cheater steered the output
    };

    // The cheater runs d consecutive virtual nodes of the ring Knowledge
    // Sharing protocol. When its segment holds both targets of one of its
    // nodes (d > n) it reads every honest input off the relayed shares, sets
    // that node's broadcast so the sum hits `preference`, and mutes the
    // matching checks at its own nodes. Otherwise it plays honestly.
    KsSybilResult run_ks_sybil(const NetworkTopology& t, AgentId cheater, std::uint64_t preference, std::size_t d,
                               std::uint64_t k, const PriorSpec& prior, std::uint64_t seed, bool record = false);

    // The cheater fields d virtual candidates in fair leader election and
    // wins if any of them is elected.
    CheaterVerdict run_le_sybil(const NetworkTopology& t, AgentId cheater, std::size_t d, const PriorSpec& prior,
                                std::uint64_t seed, bool record = false);
}
