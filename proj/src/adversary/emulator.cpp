#include "ras/adversary/emulator.hpp"

#include "ras/error.hpp"

#include <algorithm>

namespace ras
{
    SubgraphEmulator::SubgraphEmulator(std::vector<NodeSpec> nodes, const std::vector<Edge>& internal,
                                       std::map<AgentId, std::vector<AgentId>> external, LogicFactory factory)
        : nodes_(std::move(nodes)), internal_(internal), external_(std::move(external)), factory_(std::move(factory))
    {
        std::map<AgentId, std::vector<AgentId>> adjacency;
        for (std::size_t i = 0; i < nodes_.size(); ++i)
        {
            index_[nodes_[i].id] = i;
            adjacency[nodes_[i].id];
        }
        for (const auto& [a, b] : internal_)
        {
            adjacency.at(a).push_back(b);
            adjacency.at(b).push_back(a);
        }
        for (const auto& [node, outside] : external_)
        {
            auto& list = adjacency.at(node);
            list.insert(list.end(), outside.begin(), outside.end());
        }
        for (const auto& spec : nodes_)
        {
            auto& list = adjacency.at(spec.id);
            std::sort(list.begin(), list.end());
            logics_.push_back(factory_(spec, list));
        }
        pending_.assign(nodes_.size(), {});
    }

    std::vector<Message> SubgraphEmulator::step(Round round, const std::vector<Message>& inbound)
    {
        if (round != rounds())
        {
            throw HarnessFault("emulator rounds must be consecutive");
        }
        std::vector<std::vector<Message>> boxes(nodes_.size());
        std::swap(boxes, pending_);
        for (const auto& m : inbound)
        {
            boxes.at(index_.at(m.to)).push_back(m);
        }
        std::vector<Message> produced;
        for (std::size_t i = 0; i < nodes_.size(); ++i)
        {
            auto& box = boxes[i];
            std::stable_sort(box.begin(), box.end(), [](const Message& a, const Message& b) { return a.from < b.from; });
            if (observer_)
            {
                observer_(nodes_[i].id, round, box);
            }
            NodeIo io{round, nodes_[i].id, box, &produced};
            logics_[i]->step(io);
        }
        std::vector<Message> leaving;
        for (auto& m : produced)
        {
            auto it = index_.find(m.to);
            if (it != index_.end())
            {
                ++internal_count_;
                pending_[it->second].push_back(std::move(m));
            }
            else
            {
                leaving.push_back(std::move(m));
            }
        }
        inbound_.push_back(inbound);
        outbound_.push_back(leaving);
        return leaving;
    }

    std::unique_ptr<SubgraphEmulator> SubgraphEmulator::replay(const std::vector<NodeSpec>& nodes) const
    {
        auto fresh = std::make_unique<SubgraphEmulator>(nodes, internal_, external_, factory_);
        for (Round r = 0; r < rounds(); ++r)
        {
            fresh->step(r, inbound_[r]);
        }
        return fresh;
    }

    bool SubgraphEmulator::all_decided() const
    {
        return std::all_of(logics_.begin(), logics_.end(), [](const auto& l) { return l->output().has_value(); });
    }

    bool SubgraphEmulator::any_failed() const
    {
        return std::any_of(logics_.begin(), logics_.end(), [](const auto& l) { return l->failed(); });
    }

    Output collapse_first(const SubgraphEmulator& emu)
    {
        if (emu.any_failed())
        {
            return Output::abort();
        }
        return *emu.logic(emu.nodes().front().id).output();
    }

    EmulatingAgent::EmulatingAgent(std::unique_ptr<SubgraphEmulator> emulator, std::vector<AgentId> frontier,
                                   Collapse collapse, Hook before_round)
        : emulator_(std::move(emulator)), frontier_(std::move(frontier)), collapse_(std::move(collapse)),
          before_round_(std::move(before_round))
    {
    }

    void EmulatingAgent::on_round(AgentIo& io)
    {
        if (io.decided())
        {
            return;
        }
        std::vector<Message> inbound;
        for (AgentId f : frontier_)
        {
            const auto box = io.inbox(f);
            inbound.insert(inbound.end(), box.begin(), box.end());
        }
        if (before_round_)
        {
            before_round_(io.round(), inbound, emulator_);
        }
        for (auto& m : emulator_->step(io.round(), inbound))
        {
            io.send(std::move(m));
        }
        if (emulator_->all_decided() || emulator_->any_failed())
        {
            io.decide(collapse_(*emulator_));
        }
    }
}

#include "ras/adversary/duplication.hpp"
#include "ras/protocols/registry.hpp"

namespace ras
{
    std::unique_ptr<SubgraphEmulator> make_virtual_emulator(const ExpandedTopology& ex, std::vector<NodeSpec> specs,
                                                            LogicFactory factory)
    {
        const std::set<AgentId> virt(ex.virtual_nodes.begin(), ex.virtual_nodes.end());
        std::vector<Edge> internal;
        for (const auto& [a, b] : ex.graph.edges())
        {
            if (virt.count(a) && virt.count(b))
            {
                internal.emplace_back(a, b);
            }
        }
        std::map<AgentId, std::vector<AgentId>> external;
        for (AgentId v : ex.virtual_nodes)
        {
            for (AgentId nb : ex.graph.neighbors(v))
            {
                if (!virt.count(nb))
                {
                    external[v].push_back(nb);
                }
            }
        }
        return std::make_unique<SubgraphEmulator>(std::move(specs), internal, std::move(external), std::move(factory));
    }

    std::vector<AgentId> frontier_nodes(const ExpandedTopology& ex)
    {
        const std::set<AgentId> virt(ex.virtual_nodes.begin(), ex.virtual_nodes.end());
        std::vector<AgentId> out;
        for (AgentId v : ex.virtual_nodes)
        {
            const auto& nbrs = ex.graph.neighbors(v);
            if (std::any_of(nbrs.begin(), nbrs.end(), [&](AgentId nb) { return !virt.count(nb); }))
            {
                out.push_back(v);
            }
        }
        return out;
    }

    ExecutionTrace run_with_cheater(Problem problem, const NetworkTopology& real, const ExpandedTopology& ex,
                                    const ProtocolParams& params, std::unique_ptr<Agent> cheater, std::uint64_t seed,
                                    bool record_messages)
    {
        ProtocolParams p = params;
        if (!p.known_n)
        {
            p.known_n = real.size();
        }
        const std::set<AgentId> virt(ex.virtual_nodes.begin(), ex.virtual_nodes.end());
        std::vector<AgentSlot> slots;
        for (const auto& node : ex.graph.nodes())
        {
            if (!virt.count(node.id))
            {
                slots.push_back(
                    honest_slot(make_logic(problem, node, ex.graph.neighbors(node.id), p, node_stream(seed, node.id))));
            }
        }
        AgentSlot slot;
        slot.agent = ex.scheme.cheater;
        slot.nodes = ex.virtual_nodes;
        slot.behavior = std::move(cheater);
        slots.push_back(std::move(slot));
        ExecutionTrace trace = run_sync(ex.graph, std::move(slots), RunOptions{seed, p.max_rounds, record_messages});
        apply_legality(problem, real, trace);
        return trace;
    }
}
