#pragma once

#include "ras/adversary/duplication.hpp"
#include "ras/protocols/legality.hpp"

#include <optional>

namespace ras
{
    struct AdaptiveResult
    {
        CheaterVerdict verdict;
        std::size_t d = 0;         // virtual nodes committed
        std::size_t n = 0;         // real ring size
        Round commit_round = 0;    // round t at which the chain was fixed
        bool consistent = false;   // replay reproduced every message already sent
    };

    // The cheater answers on both ring edges with a fresh id every round
    // until an id it has already seen comes back (round t), then commits to
    // a chain of 2t virtual nodes that reproduces everything it sent, and
    // emulates that chain honestly for the rest of the protocol.
    // `stop_round` forces the commit at a given round instead (control run).
    AdaptiveResult run_adaptive_duplication(const NetworkTopology& ring, AgentId cheater, std::uint64_t seed,
                                            std::optional<Round> stop_round = std::nullopt,
                                            Problem problem = Problem::ColoringRing);
}
