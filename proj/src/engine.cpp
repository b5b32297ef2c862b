#include "ras/engine.hpp"

#include "ras/error.hpp"

#include <algorithm>
#include <string>

namespace ras
{
    const Output& ExecutionTrace::output_of(AgentId agent) const
    {
        for (const auto& o : outputs)
        {
            if (o.agent == agent)
            {
                return o.output;
            }
        }
        throw HarnessFault("no output recorded for agent " + std::to_string(agent));
    }

    bool ExecutionTrace::any_bottom() const
    {
        return std::any_of(outputs.begin(), outputs.end(), [](const AgentOutput& o) { return o.output.bottom; });
    }

    class Engine
    {
    public:
        Engine(const NetworkTopology& graph, std::vector<AgentSlot>& slots, const RunOptions& options)
            : graph_(graph), slots_(slots), options_(options), owner_(graph.size(), npos),
              inbox_(graph.size()), decided_(slots.size(), 0)
        {
            for (std::size_t s = 0; s < slots_.size(); ++s)
            {
                if (!slots_[s].behavior)
                {
                    throw HarnessFault("agent " + std::to_string(slots_[s].agent) + " has no behavior");
                }
                for (AgentId node : slots_[s].nodes)
                {
                    auto& owner = owner_[graph_.index_of(node)];
                    if (owner != npos)
                    {
                        throw HarnessFault("node " + std::to_string(node) + " owned twice");
                    }
                    owner = s;
                }
            }
            if (std::find(owner_.begin(), owner_.end(), npos) != owner_.end())
            {
                throw HarnessFault("execution-graph node without a behavior");
            }
        }

        ExecutionTrace run()
        {
            ExecutionTrace trace;
            trace.seed = options_.seed;
            std::size_t remaining = slots_.size();
            Round round = 0;
            while (remaining > 0)
            {
                if (round >= options_.max_rounds)
                {
                    throw RunawayProtocol("round budget of " + std::to_string(options_.max_rounds) + " exhausted");
                }
                outbox_.clear();
                for (std::size_t s = 0; s < slots_.size(); ++s)
                {
                    AgentIo io(*this, s, round);
                    slots_[s].behavior->on_round(io);
                }
                for (auto& box : inbox_)
                {
                    box.clear();
                }
                std::stable_sort(outbox_.begin(), outbox_.end(), [](const Message& a, const Message& b) {
                    return a.from != b.from ? a.from < b.from : a.to < b.to;
                });
                for (const auto& m : outbox_)
                {
                    inbox_[graph_.index_of(m.to)].push_back(m);
                }
                trace.message_count += outbox_.size();
                if (options_.record_messages)
                {
                    trace.rounds.push_back(outbox_);
                }
                for (auto& d : pending_)
                {
                    trace.outputs.push_back(std::move(d));
                    --remaining;
                }
                pending_.clear();
                ++round;
            }
            trace.rounds_executed = round;
            std::stable_sort(trace.outputs.begin(), trace.outputs.end(),
                             [](const AgentOutput& a, const AgentOutput& b) { return a.agent < b.agent; });
            trace.legality = trace.any_bottom() ? Legality::Erroneous : Legality::Legal;
            return trace;
        }

        std::span<const Message> inbox(std::size_t slot, AgentId node) const
        {
            const std::size_t idx = graph_.index_of(node);
            if (owner_[idx] != slot)
            {
                throw HarnessFault("agent reads inbox of node " + std::to_string(node) + " it does not own");
            }
            return inbox_[idx];
        }

        void send(std::size_t slot, Round round, AgentId from, AgentId to, Payload payload)
        {
            if (!graph_.contains(from) || owner_[graph_.index_of(from)] != slot)
            {
                throw HarnessFault("agent sends as node " + std::to_string(from) + " it does not own");
            }
            if (!graph_.adjacent(from, to))
            {
                throw HarnessFault("send on non-edge " + std::to_string(from) + " -> " + std::to_string(to));
            }
            outbox_.push_back(Message{from, to, round, std::move(payload)});
        }

        void decide(std::size_t slot, Round round, Output output)
        {
            if (decided_[slot])
            {
                throw HarnessFault("agent " + std::to_string(slots_[slot].agent) + " decided twice");
            }
            decided_[slot] = 1;
            pending_.push_back(AgentOutput{slots_[slot].agent, std::move(output), round});
        }

        bool decided(std::size_t slot) const { return decided_[slot] != 0; }

    private:
        static constexpr std::size_t npos = static_cast<std::size_t>(-1);

        const NetworkTopology& graph_;
        std::vector<AgentSlot>& slots_;
        const RunOptions& options_;
        std::vector<std::size_t> owner_;
        std::vector<std::vector<Message>> inbox_;
        std::vector<Message> outbox_;
        std::vector<AgentOutput> pending_;
        std::vector<char> decided_;
    };

    std::span<const Message> AgentIo::inbox(AgentId node) const { return engine_.inbox(slot_, node); }

    void AgentIo::send(AgentId from, AgentId to, Payload payload)
    {
        engine_.send(slot_, round_, from, to, std::move(payload));
    }

    void AgentIo::decide(Output output) { engine_.decide(slot_, round_, std::move(output)); }

    bool AgentIo::decided() const noexcept { return engine_.decided(slot_); }

    ExecutionTrace run_sync(const NetworkTopology& graph, std::vector<AgentSlot> agents, const RunOptions& options)
    {
        if (options.max_rounds == 0)
        {
            throw HarnessFault("max_rounds must be positive");
        }
        Engine engine(graph, agents, options);
        return engine.run();
    }
}
