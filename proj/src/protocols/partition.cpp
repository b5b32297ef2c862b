#include "ras/protocols/partition.hpp"

namespace ras
{
    std::uint64_t partition_output(std::uint64_t own_bit, std::uint64_t partner_bit, std::uint64_t mark)
    {
        return (own_bit + partner_bit + mark) % 2;
    }

    PartitionLogic::PartitionLogic(AgentId self, std::vector<AgentId> neighbors,
                                   std::optional<std::size_t> size_bound, RngStream rng)
        : NodeLogic(self, neighbors, rng), wake_(self, neighbors.at(0), neighbors.at(1), size_bound),
          election_(rng.substream(2))
    {
    }

    void PartitionLogic::on_step(NodeIo& io)
    {
        if (!election_.started())
        {
            const auto status = wake_.step(io);
            if (status == PhaseStatus::Failed)
            {
                fail(io);
                return;
            }
            if (status == PhaseStatus::Running)
            {
                return;
            }
            election_.start(wake_.view(), wake_.next_phase_round());
        }
        if (!token_started_)
        {
            const auto status = election_.step(io);
            if (status == PhaseStatus::Failed)
            {
                fail(io);
                return;
            }
            if (status == PhaseStatus::Running)
            {
                return;
            }
            token_started_ = true;
            view_ = wake_.view();
            token_base_ = io.round;
            const std::size_t n = view_.n_prime();
            offset_ = (view_.position + n - view_.position_of(election_.winner())) % n;
            mark_ = (offset_ + 1) % 2;
            bit_ = rng().bit() ? 1 : 0;
        }
        token_phase(io);
    }

    void PartitionLogic::token_phase(NodeIo& io)
    {
        const std::size_t n = view_.n_prime();
        const Round local = io.round - token_base_;
        std::optional<std::uint64_t> token;
        for (const auto& m : io.inbox)
        {
            if (m.payload.tag == Tag::Token)
            {
                if (token || m.from != view_.ccw())
                {
                    fail(io);
                    return;
                }
                token = m.payload.words[0];
            }
            else if (m.payload.tag == Tag::CoinShare)
            {
                const AgentId partner = mark_ == 1 ? view_.cw() : view_.ccw();
                if (partner_bit_ || m.from != partner)
                {
                    fail(io);
                    return;
                }
                partner_bit_ = m.payload.words[0] % 2;
            }
        }

        if (offset_ == 0)
        {
            // Initiator: behaves as a mark-1 node and checks the returning token.
            if (local == 0)
            {
                io.send(view_.cw(), make_payload(Tag::Token, 0));
            }
            if (local == 1)
            {
                io.send(view_.cw(), make_payload(Tag::CoinShare, bit_));
            }
            if (local == 2)
            {
                if (!partner_bit_)
                {
                    fail(io);
                    return;
                }
                result_ = partition_output(bit_, *partner_bit_, mark_);
            }
            if (token && local != n)
            {
                fail(io);
                return;
            }
            if (local == n)
            {
                // An even ring returns the opposite token value.
                if (!token || *token != 1 || !result_)
                {
                    fail(io);
                    return;
                }
                finish(Output::scalar(*result_));
            }
            return;
        }

        const Round arrival = static_cast<Round>(offset_);
        if (token && (local != arrival || *token != mark_))
        {
            fail(io);
            return;
        }
        if (local == arrival)
        {
            if (!token)
            {
                fail(io);
                return;
            }
            io.send(view_.cw(), make_payload(Tag::Token, 1 - mark_));
            if (mark_ == 0)
            {
                io.send(view_.ccw(), make_payload(Tag::CoinShare, bit_));
            }
        }
        if (mark_ == 1 && local == arrival + 1)
        {
            io.send(view_.cw(), make_payload(Tag::CoinShare, bit_));
        }
        const Round decide_at = arrival + (mark_ == 0 ? 1 : 2);
        if (local == decide_at)
        {
            if (!partner_bit_)
            {
                fail(io);
                return;
            }
            finish(Output::scalar(partition_output(bit_, *partner_bit_, mark_)));
        }
    }
}
