#include "ras/protocols/orientation.hpp"

#include <algorithm>

namespace ras
{
    AgentId edge_head(AgentId a, AgentId b, std::uint64_t bit_a, std::uint64_t bit_b)
    {
        return ((bit_a ^ bit_b) & 1) ? std::max(a, b) : std::min(a, b);
    }

    void OrientationLogic::on_step(NodeIo& io)
    {
        if (io.round == 0)
        {
            for (AgentId nb : neighbors())
            {
                sent_.push_back(rng().bit() ? 1 : 0);
                io.send(nb, make_payload(Tag::EdgeBit, sent_.back()));
            }
            return;
        }
        std::vector<std::uint64_t> value;
        for (std::size_t i = 0; i < neighbors().size(); ++i)
        {
            const AgentId nb = neighbors()[i];
            auto it = std::find_if(io.inbox.begin(), io.inbox.end(), [&](const Message& m) {
                return m.from == nb && m.payload.tag == Tag::EdgeBit;
            });
            if (it == io.inbox.end())
            {
                fail(io);
                return;
            }
            value.push_back(nb);
            value.push_back(edge_head(id(), nb, sent_[i], it->payload.words[0]));
        }
        finish(Output{false, value});
    }
}
