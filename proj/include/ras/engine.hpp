#pragma once

#include "ras/message.hpp"
#include "ras/topology.hpp"

#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace ras
{
    enum class Legality : std::uint8_t
    {
        Legal,
        Erroneous,
    };

    struct AgentOutput
    {
        AgentId agent = 0;
        Output output;
        Round round = 0;
    };

    struct ExecutionTrace
    {
        std::uint64_t seed = 0;
        // rounds[r] holds the messages sent in round r; empty unless recording.
        std::vector<std::vector<Message>> rounds;
        std::vector<AgentOutput> outputs;
        Legality legality = Legality::Erroneous;
        std::size_t message_count = 0;
        Round rounds_executed = 0;

        const Output& output_of(AgentId agent) const;
        bool any_bottom() const;
    };

    class Engine;

    // Per-round interface handed to an agent. An agent owns one or more
    // execution-graph nodes (several when it runs Sybil duplicates) and
    // emits exactly one output.
    class AgentIo
    {
    public:
        Round round() const noexcept { return round_; }
        std::span<const Message> inbox(AgentId node) const;
        void send(AgentId from, AgentId to, Payload payload);
        void send(Message message) { send(message.from, message.to, std::move(message.payload)); }
        void decide(Output output);
        bool decided() const noexcept;

    private:
        friend class Engine;
        AgentIo(Engine& engine, std::size_t slot, Round round) : engine_(engine), slot_(slot), round_(round) {}

        Engine& engine_;
        std::size_t slot_;
        Round round_;
    };

    class Agent
    {
    public:
        virtual ~Agent() = default;
        virtual void on_round(AgentIo& io) = 0;
    };

    struct AgentSlot
    {
        AgentId agent = 0;             // real agent identity (output key)
        std::vector<AgentId> nodes;    // execution-graph nodes it controls
        std::unique_ptr<Agent> behavior;
    };

    struct RunOptions
    {
        std::uint64_t seed = 0;
        Round max_rounds = 10'000;
        bool record_messages = false;
    };

    // Synchronous rounds over `graph`. Messages sent in round r are delivered
    // in round r+1 in (sender, receiver) order. Ends when every agent has an
    // output; throws RunawayProtocol if max_rounds passes first and
    // HarnessFault on physics violations. Legality is left Erroneous when
    // any output is bottom; callers apply the problem predicate afterwards.
    ExecutionTrace run_sync(const NetworkTopology& graph, std::vector<AgentSlot> agents, const RunOptions& options);
}
