#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace ras
{
    using AgentId = std::uint64_t;

    struct NodeSpec
    {
        AgentId id = 0;
        std::uint64_t input = 0;
        std::uint64_t preference = 0;
    };

    using Edge = std::pair<AgentId, AgentId>;

    inline Edge make_edge(AgentId a, AgentId b) { return a < b ? Edge{a, b} : Edge{b, a}; }

    // Undirected simple graph of agents. Node order is meaningful for rings
    // built by build_ring (position i is adjacent to i-1 and i+1).
    class NetworkTopology
    {
    public:
        NetworkTopology() = default;

        // Throws InvalidTopology on duplicate ids, self loops or unknown endpoints.
        NetworkTopology(std::vector<NodeSpec> nodes, const std::vector<Edge>& edges);

        std::size_t size() const noexcept { return nodes_.size(); }
        const std::vector<NodeSpec>& nodes() const noexcept { return nodes_; }
        const std::set<Edge>& edges() const noexcept { return edges_; }

        bool contains(AgentId id) const;
        std::size_t index_of(AgentId id) const;
        const NodeSpec& node(AgentId id) const;
        NodeSpec& node(AgentId id);

        bool adjacent(AgentId a, AgentId b) const;
        // Sorted ascending.
        const std::vector<AgentId>& neighbors(AgentId id) const;
        std::size_t degree(AgentId id) const { return neighbors(id).size(); }

        // True when the graph is a single cycle on >= 3 nodes.
        bool is_ring() const;

    private:
        void index();

        std::vector<NodeSpec> nodes_;
        std::set<Edge> edges_;
        std::vector<std::vector<AgentId>> adjacency_;
        std::vector<std::pair<AgentId, std::size_t>> sorted_ids_;
    };

    struct RingOptions
    {
        std::uint64_t input_domain = 2;
        std::uint64_t preference_domain = 2;
    };

    NetworkTopology build_ring(std::size_t n, std::uint64_t seed, const RingOptions& options = {});

    // Ids in cyclic order starting from the first node, stepping to the
    // second node first when the two are adjacent (so build_ring order is
    // kept). Throws InvalidTopology if not a ring.
    std::vector<AgentId> ring_order(const NetworkTopology& t);

    bool is_connected(const NetworkTopology& t, std::optional<AgentId> removed = std::nullopt);

    // True iff n >= 3, connected, and connected after removing any single node.
    bool verify_two_connected(const NetworkTopology& t);

    // Random cycle plus chords; always 2-connected.
    NetworkTopology random_two_connected(std::size_t n, double chord_probability, std::uint64_t seed,
                                         const RingOptions& options = {});

    // Fresh ids not already present in `taken`.
    std::vector<AgentId> fresh_ids(std::size_t count, std::uint64_t seed, const std::set<AgentId>& taken);
}
