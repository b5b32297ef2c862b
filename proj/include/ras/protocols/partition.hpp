#pragma once

#include "ras/protocols/leader_election.hpp"

#include <optional>

namespace ras
{
    // o = (t_a + t_partner + m) mod 2.
    std::uint64_t partition_output(std::uint64_t own_bit, std::uint64_t partner_bit, std::uint64_t mark);

    // Wake-Up, election of an initiator, then an alternating token sent
    // clockwise. Each token pair exchanges one random bit simultaneously;
    // the initiator checks the parity of the returning token.
    class PartitionLogic : public NodeLogic
    {
    public:
        PartitionLogic(AgentId self, std::vector<AgentId> neighbors, std::optional<std::size_t> size_bound,
                       RngStream rng);

    protected:
        void on_step(NodeIo& io) override;

    private:
        void token_phase(NodeIo& io);

        RingWakeUp wake_;
        Election election_;
        bool token_started_ = false;
        RingView view_;
        Round token_base_ = 0;
        std::size_t offset_ = 0; // clockwise distance from the initiator
        std::uint64_t mark_ = 0;
        std::uint64_t bit_ = 0;
        std::optional<std::uint64_t> partner_bit_;
        std::optional<std::uint64_t> result_;
    };
}
