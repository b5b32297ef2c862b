#pragma once

#include "ras/node_logic.hpp"

namespace ras
{
    // Head of edge (a, b) given the two exchanged bits: XOR 1 points at the
    // higher id, XOR 0 at the lower.
    AgentId edge_head(AgentId a, AgentId b, std::uint64_t bit_a, std::uint64_t bit_b);

    // Round 0: one fresh bit per edge. Round 1: output the heads as
    // [neighbor, head, ...] sorted by neighbor.
    class OrientationLogic : public NodeLogic
    {
    public:
        using NodeLogic::NodeLogic;

    protected:
        void on_step(NodeIo& io) override;

    private:
        std::vector<std::uint64_t> sent_;
    };
}
