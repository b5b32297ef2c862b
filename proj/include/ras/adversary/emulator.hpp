#pragma once

#include "ras/engine.hpp"
#include "ras/node_logic.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

namespace ras
{
    using LogicFactory = std::function<std::unique_ptr<NodeLogic>(const NodeSpec&, const std::vector<AgentId>&)>;

    // A cheater's private simulation of a set of virtual nodes. Internal
    // messages never leave the emulator; messages to or from outside nodes
    // cross the boundary and are recorded per round, so the whole run can be
    // re-simulated from round 0 under different choices.
    class SubgraphEmulator
    {
    public:
        using Observer = std::function<void(AgentId node, Round round, std::span<const Message> inbox)>;

        // `nodes` are the virtual nodes; `internal` the edges among them;
        // `external` the outside neighbors of each frontier node.
        SubgraphEmulator(std::vector<NodeSpec> nodes, const std::vector<Edge>& internal,
                         std::map<AgentId, std::vector<AgentId>> external, LogicFactory factory);

        // One round. `inbound` are this round's deliveries from outside;
        // returns the messages leaving the subgraph.
        std::vector<Message> step(Round round, const std::vector<Message>& inbound);

        // Fresh emulator with the same layout, replayed through every
        // recorded round with the given node specs.
        std::unique_ptr<SubgraphEmulator> replay(const std::vector<NodeSpec>& nodes) const;

        void set_observer(Observer observer) { observer_ = std::move(observer); }

        const std::vector<NodeSpec>& nodes() const noexcept { return nodes_; }
        bool owns(AgentId id) const { return index_.count(id) != 0; }
        NodeLogic& logic(AgentId id) { return *logics_.at(index_.at(id)); }
        const NodeLogic& logic(AgentId id) const { return *logics_.at(index_.at(id)); }

        const std::vector<std::vector<Message>>& inbound_log() const noexcept { return inbound_; }
        const std::vector<std::vector<Message>>& outbound_log() const noexcept { return outbound_; }
        Round rounds() const noexcept { return static_cast<Round>(inbound_.size()); }

        bool all_decided() const;
        bool any_failed() const;
        std::size_t internal_messages() const noexcept { return internal_count_; }

    private:
        std::vector<NodeSpec> nodes_;
        std::vector<Edge> internal_;
        std::map<AgentId, std::vector<AgentId>> external_;
        LogicFactory factory_;
        std::map<AgentId, std::size_t> index_;
        std::vector<std::unique_ptr<NodeLogic>> logics_;
        std::vector<std::vector<Message>> pending_;
        std::vector<std::vector<Message>> inbound_;
        std::vector<std::vector<Message>> outbound_;
        Observer observer_;
        std::size_t internal_count_ = 0;
    };

    // Output policy for an agent acting through several nodes.
    using Collapse = std::function<Output(const SubgraphEmulator&)>;

    // Bottom if any virtual node is bottom, else the first virtual node's output.
    Output collapse_first(const SubgraphEmulator& emu);

    // Real agent driving a SubgraphEmulator through the engine. Decides
    // once every virtual node has decided. `before_round` is run before
    // each emulated round and may swap the emulator.
    class EmulatingAgent : public Agent
    {
    public:
        using Hook = std::function<void(Round, const std::vector<Message>& inbound, std::unique_ptr<SubgraphEmulator>&)>;

        EmulatingAgent(std::unique_ptr<SubgraphEmulator> emulator, std::vector<AgentId> frontier, Collapse collapse,
                       Hook before_round = {});

        void on_round(AgentIo& io) override;

        SubgraphEmulator& emulator() { return *emulator_; }

    private:
        std::unique_ptr<SubgraphEmulator> emulator_;
        std::vector<AgentId> frontier_;
        Collapse collapse_;
        Hook before_round_;
    };
}

namespace ras
{
    struct ExpandedTopology;
    struct ProtocolParams;
    enum class Problem : std::uint8_t;

    // Emulator over the virtual nodes of an expanded topology; `specs` gives
    // the virtual nodes' inputs and preferences in `ex.virtual_nodes` order.
    std::unique_ptr<SubgraphEmulator> make_virtual_emulator(const ExpandedTopology& ex, std::vector<NodeSpec> specs,
                                                            LogicFactory factory);

    // Virtual nodes that have an outside neighbor.
    std::vector<AgentId> frontier_nodes(const ExpandedTopology& ex);

    // Honest agents everywhere except the cheater, which is driven by
    // `cheater`. Legality is applied against the real topology `real`.
    ExecutionTrace run_with_cheater(Problem problem, const NetworkTopology& real, const ExpandedTopology& ex,
                                    const ProtocolParams& params, std::unique_ptr<Agent> cheater, std::uint64_t seed,
                                    bool record_messages = false);
}
