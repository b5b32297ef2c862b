#pragma once

#include "ras/node_logic.hpp"
#include "ras/topology.hpp"

#include <optional>
#include <vector>

namespace ras
{
    // What a ring node knows after Wake-Up. `cycle` is in canonical
    // orientation: it starts at the max id and continues toward that node's
    // smaller-id neighbor. "Clockwise" means increasing index.
    struct RingView
    {
        std::vector<AgentId> cycle;
        std::size_t position = 0;

        std::size_t n_prime() const noexcept { return cycle.size(); }
        AgentId at(std::size_t pos) const { return cycle[pos % cycle.size()]; }
        // Node `hops` steps clockwise (negative: counter-clockwise) from position `pos`.
        AgentId walk(std::size_t pos, long hops) const;
        std::size_t position_of(AgentId id) const;
        AgentId cw() const { return walk(position, 1); }
        AgentId ccw() const { return walk(position, -1); }
        std::vector<AgentId> sorted_ids() const;
    };

    // Puts a cyclic sequence into canonical orientation.
    std::vector<AgentId> canonical_cycle(const std::vector<AgentId>& cyclic);

    enum class PhaseStatus
    {
        Running,
        Done,
        Failed,
    };

    // Bidirectional id flooding. Every node meets the flood from the other
    // side at round ceil(n'/2), echoes its reconstructed cycle to both
    // neighbors, and compares the echoes one round later. The next phase
    // starts in that comparison round (`next_phase_round`).
    class RingWakeUp
    {
    public:
        // `size_bound`: nodes fail when the observed n' exceeds it.
        RingWakeUp(AgentId self, AgentId a, AgentId b, std::optional<std::size_t> size_bound = std::nullopt);

        PhaseStatus step(NodeIo& io);

        const RingView& view() const { return view_; }
        Round next_phase_round() const noexcept { return next_phase_; }

    private:
        AgentId self_;
        AgentId side_a_;
        AgentId side_b_;
        std::optional<std::size_t> bound_;
        std::vector<AgentId> from_a_;
        std::vector<AgentId> from_b_;
        bool met_ = false;
        bool done_ = false;
        Round next_phase_ = 0;
        RingView view_;
    };

    // Full-topology knowledge after graph Wake-Up.
    struct GraphView
    {
        NetworkTopology graph;
        std::size_t n_prime() const noexcept { return graph.size(); }
    };

    // Floods (origin, neighbor list) announcements until the known set is
    // closed, then at round n' sends the flattened edge list to every
    // neighbor and compares at n'+1, which is also `next_phase_round`.
    class GraphWakeUp
    {
    public:
        GraphWakeUp(AgentId self, std::vector<AgentId> neighbors, std::optional<std::size_t> size_bound = std::nullopt,
                    std::optional<std::size_t> exact_size = std::nullopt);

        PhaseStatus step(NodeIo& io);

        const GraphView& view() const { return view_; }
        Round next_phase_round() const noexcept { return next_phase_; }

    private:
        bool closed() const;
        std::vector<std::uint64_t> flattened_edges() const;

        AgentId self_;
        std::vector<AgentId> neighbors_;
        std::optional<std::size_t> bound_;
        std::optional<std::size_t> exact_;
        std::vector<std::pair<AgentId, std::vector<AgentId>>> known_;
        bool complete_ = false;
        bool done_ = false;
        Round echo_round_ = 0;
        Round next_phase_ = 0;
        GraphView view_;
    };

    // Detection rule: honest agents abort when the observed size exceeds beta.
    bool detect_oversize(std::size_t n_prime, std::optional<std::size_t> beta);
}
