#pragma once

#include "ras/engine.hpp"
#include "ras/message.hpp"
#include "ras/rng.hpp"

#include <optional>
#include <span>
#include <vector>

namespace ras
{
    // One node's view of a round: its inbox and an outgoing buffer.
    struct NodeIo
    {
        Round round = 0;
        AgentId self = 0;
        std::span<const Message> inbox;
        std::vector<Message>* out = nullptr;

        void send(AgentId to, Payload payload) const
        {
            out->push_back(Message{self, to, round, std::move(payload)});
        }
    };

    // Honest per-node state machine. Handles the abort flood: on local
    // failure or on receiving Abort, the node outputs bottom and tells its
    // neighbors once. After any output the node goes quiet.
    class NodeLogic
    {
    public:
        NodeLogic(AgentId self, std::vector<AgentId> neighbors, RngStream rng);
        virtual ~NodeLogic() = default;

        void step(NodeIo& io);

        AgentId id() const noexcept { return self_; }
        const std::vector<AgentId>& neighbors() const noexcept { return neighbors_; }
        const std::optional<Output>& output() const noexcept { return output_; }
        bool failed() const noexcept { return output_ && output_->bottom; }

    protected:
        virtual void on_step(NodeIo& io) = 0;

        void fail(NodeIo& io);
        void finish(Output output) { output_ = std::move(output); }
        void send_all(NodeIo& io, const Payload& payload) const;
        RngStream& rng() noexcept { return rng_; }

    private:
        AgentId self_;
        std::vector<AgentId> neighbors_;
        RngStream rng_;
        std::optional<Output> output_;
    };

    // Agent owning a single node driven by one NodeLogic.
    class LogicAgent final : public Agent
    {
    public:
        explicit LogicAgent(std::unique_ptr<NodeLogic> logic) : logic_(std::move(logic)) {}
        void on_round(AgentIo& io) override;
        const NodeLogic& logic() const { return *logic_; }

    private:
        std::unique_ptr<NodeLogic> logic_;
        std::vector<Message> buffer_;
    };

    AgentSlot honest_slot(std::unique_ptr<NodeLogic> logic);

    inline Payload make_payload(Tag tag, std::uint64_t w0 = 0, std::uint64_t w1 = 0, std::uint64_t w2 = 0,
                                std::uint64_t w3 = 0)
    {
        Payload p;
        p.tag = tag;
        p.words = {w0, w1, w2, w3};
        return p;
    }
}
