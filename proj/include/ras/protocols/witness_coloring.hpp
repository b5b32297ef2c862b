#pragma once

#include "ras/node_logic.hpp"
#include "ras/wakeup.hpp"

#include <map>
#include <optional>
#include <set>
#include <vector>

namespace ras
{
    // Draw outcome: X sorted descending, element (r_a + r_w) mod |X|, 0-based.
    std::uint64_t draw_value(const std::set<std::uint64_t>& available, std::uint64_t r_self, std::uint64_t r_witness);

    // The witness of a node: its minimum-id neighbor.
    AgentId witness_of(const NetworkTopology& g, AgentId a);

    // a -> w(a) -> ... -> b, with the w(a) -> b leg a shortest path avoiding
    // a (ties broken toward smaller ids). Includes both endpoints.
    std::vector<AgentId> prompt_path(const NetworkTopology& g, AgentId a, AgentId b);

    // Witness coloring for a known network size n: graph Wake-Up, ranks
    // drawn in descending-id order (three rounds per draw), simultaneous
    // prompts over two disjoint routes, then coloring in rank order.
    class WitnessColoringLogic : public NodeLogic
    {
    public:
        WitnessColoringLogic(AgentId self, std::vector<AgentId> neighbors, std::uint64_t preference, std::size_t n,
                             RngStream rng);

        std::optional<std::uint64_t> rank() const { return rank_; }

    protected:
        void on_step(NodeIo& io) override;

    private:
        bool draw_round(NodeIo& io);
        bool prompt_round(NodeIo& io);
        bool color_round(NodeIo& io);

        std::uint64_t preference_;
        std::size_t n_;
        GraphWakeUp wake_;
        bool awake_ = false;
        Round draw_base_ = 0;
        std::vector<AgentId> order_; // draw order, descending id
        AgentId witness_ = 0;

        // Own draw.
        std::set<std::uint64_t> available_;
        std::uint64_t r_self_ = 0;
        std::optional<std::uint64_t> rank_;

        // Acting as witness for the current drawer.
        std::set<std::uint64_t> witnessed_available_;
        std::uint64_t r_witness_ = 0;
        std::map<AgentId, std::uint64_t> witnessed_;

        std::map<AgentId, std::uint64_t> published_; // neighbor -> announced rank
        std::map<AgentId, std::uint64_t> direct_;
        std::map<AgentId, std::uint64_t> relayed_;
        std::set<std::uint64_t> neighbor_colors_;
    };
}
