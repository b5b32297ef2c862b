#pragma once

#include "ras/engine.hpp"
#include "ras/topology.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>

namespace ras
{
    enum class Problem : std::uint8_t
    {
        KnowledgeSharing,
        ColoringWitness,
        ColoringRing,
        LeaderElection,
        Partition,
        Orientation,
    };

    // Config names: ks, coloring-witness, coloring-ring, leader-election,
    // partition, orientation.
    std::string problem_name(Problem p);
    Problem problem_from_name(const std::string& name);

    // Per-problem predicate over the real agents of `t`. Bottom anywhere is
    // always Erroneous.
    Legality legality(Problem problem, const NetworkTopology& t, const ExecutionTrace& trace);

    // Evaluates the predicate and stores it in the trace.
    void apply_legality(Problem problem, const NetworkTopology& t, ExecutionTrace& trace);

    // 1 iff the outcome is legal and the agent got what it prefers.
    int utility(AgentId a, const ExecutionTrace& trace, std::uint64_t preference);

    using OutputFunction = std::function<std::uint64_t(std::span<const std::uint64_t>)>;

    // Brute force over every position and every fixing of the other m-1
    // inputs in {0..k-1}: each output value must be hit equally often by
    // the free input. Default q is the sum mod k.
    bool check_full_knowledge(std::uint64_t k, std::size_t m, const OutputFunction& q = {});
}
