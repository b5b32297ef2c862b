#include "ras/node_logic.hpp"

#include <algorithm>

namespace ras
{
    NodeLogic::NodeLogic(AgentId self, std::vector<AgentId> neighbors, RngStream rng)
        : self_(self), neighbors_(std::move(neighbors)), rng_(rng)
    {
    }

    void NodeLogic::step(NodeIo& io)
    {
        if (output_)
        {
            return;
        }
        const bool aborted = std::any_of(io.inbox.begin(), io.inbox.end(),
                                         [](const Message& m) { return m.payload.tag == Tag::Abort; });
        if (aborted)
        {
            fail(io);
            return;
        }
        on_step(io);
    }

    void NodeLogic::fail(NodeIo& io)
    {
        if (output_)
        {
            return;
        }
        output_ = Output::abort();
        send_all(io, make_payload(Tag::Abort));
    }

    void NodeLogic::send_all(NodeIo& io, const Payload& payload) const
    {
        for (AgentId nb : neighbors_)
        {
            io.send(nb, payload);
        }
    }

    void LogicAgent::on_round(AgentIo& io)
    {
        if (io.decided())
        {
            return;
        }
        buffer_.clear();
        NodeIo nio{io.round(), logic_->id(), io.inbox(logic_->id()), &buffer_};
        logic_->step(nio);
        for (auto& m : buffer_)
        {
            io.send(std::move(m));
        }
        if (logic_->output())
        {
            io.decide(*logic_->output());
        }
    }

    AgentSlot honest_slot(std::unique_ptr<NodeLogic> logic)
    {
        AgentSlot slot;
        slot.agent = logic->id();
        slot.nodes = {logic->id()};
        slot.behavior = std::make_unique<LogicAgent>(std::move(logic));
        return slot;
    }
}
