#include "ras/topology.hpp"

#include "ras/error.hpp"
#include "ras/rng.hpp"

#include <algorithm>
#include <deque>
#include <string>

namespace ras
{
    NetworkTopology::NetworkTopology(std::vector<NodeSpec> nodes, const std::vector<Edge>& edges)
        : nodes_(std::move(nodes))
    {
        index();
        for (const auto& [a, b] : edges)
        {
            if (a == b)
            {
                throw InvalidTopology("self loop on node " + std::to_string(a));
            }
            if (!contains(a) || !contains(b))
            {
                throw InvalidTopology("edge endpoint not in topology");
            }
            if (!edges_.insert(make_edge(a, b)).second)
            {
                throw InvalidTopology("parallel edge");
            }
        }
        adjacency_.assign(nodes_.size(), {});
        for (const auto& [a, b] : edges_)
        {
            adjacency_[index_of(a)].push_back(b);
            adjacency_[index_of(b)].push_back(a);
        }
        for (auto& list : adjacency_)
        {
            std::sort(list.begin(), list.end());
        }
    }

    void NetworkTopology::index()
    {
        sorted_ids_.clear();
        sorted_ids_.reserve(nodes_.size());
        for (std::size_t i = 0; i < nodes_.size(); ++i)
        {
            sorted_ids_.emplace_back(nodes_[i].id, i);
        }
        std::sort(sorted_ids_.begin(), sorted_ids_.end());
        for (std::size_t i = 1; i < sorted_ids_.size(); ++i)
        {
            if (sorted_ids_[i].first == sorted_ids_[i - 1].first)
            {
                throw InvalidTopology("duplicate agent id " + std::to_string(sorted_ids_[i].first));
            }
        }
    }

    bool NetworkTopology::contains(AgentId id) const
    {
        auto it = std::lower_bound(sorted_ids_.begin(), sorted_ids_.end(), std::pair<AgentId, std::size_t>{id, 0});
        return it != sorted_ids_.end() && it->first == id;
    }

    std::size_t NetworkTopology::index_of(AgentId id) const
    {
        auto it = std::lower_bound(sorted_ids_.begin(), sorted_ids_.end(), std::pair<AgentId, std::size_t>{id, 0});
        if (it == sorted_ids_.end() || it->first != id)
        {
            throw InvalidTopology("unknown agent id " + std::to_string(id));
        }
        return it->second;
    }

    const NodeSpec& NetworkTopology::node(AgentId id) const { return nodes_[index_of(id)]; }
    NodeSpec& NetworkTopology::node(AgentId id) { return nodes_[index_of(id)]; }

    bool NetworkTopology::adjacent(AgentId a, AgentId b) const
    {
        return edges_.count(make_edge(a, b)) != 0;
    }

    const std::vector<AgentId>& NetworkTopology::neighbors(AgentId id) const
    {
        return adjacency_[index_of(id)];
    }

    bool NetworkTopology::is_ring() const
    {
        if (nodes_.size() < 3 || edges_.size() != nodes_.size())
        {
            return false;
        }
        for (const auto& list : adjacency_)
        {
            if (list.size() != 2)
            {
                return false;
            }
        }
        return is_connected(*this);
    }

    NetworkTopology build_ring(std::size_t n, std::uint64_t seed, const RingOptions& options)
    {
        if (n < 3)
        {
            throw InvalidTopology("a ring needs at least 3 nodes, got " + std::to_string(n));
        }
        RngStream rng(seed);
        const auto ids = fresh_ids(n, rng.next_u64(), {});
        std::vector<NodeSpec> nodes;
        nodes.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            NodeSpec spec;
            spec.id = ids[i];
            spec.input = rng.uniform(0, options.input_domain - 1);
            spec.preference = rng.uniform(0, options.preference_domain - 1);
            nodes.push_back(spec);
        }
        std::vector<Edge> edges;
        for (std::size_t i = 0; i < n; ++i)
        {
            edges.push_back(make_edge(ids[i], ids[(i + 1) % n]));
        }
        return NetworkTopology(std::move(nodes), edges);
    }

    std::vector<AgentId> ring_order(const NetworkTopology& t)
    {
        if (!t.is_ring())
        {
            throw InvalidTopology("topology is not a ring");
        }
        std::vector<AgentId> order;
        order.reserve(t.size());
        AgentId prev = t.nodes().front().id;
        order.push_back(prev);
        // Walk toward the neighbor that follows position 0 in node order when
        // possible so that build_ring orders are preserved.
        const auto& first_nbrs = t.neighbors(prev);
        AgentId cur = first_nbrs[0];
        if (t.size() > 1 && t.adjacent(prev, t.nodes()[1].id))
        {
            cur = t.nodes()[1].id;
        }
        while (cur != order.front())
        {
            order.push_back(cur);
            const auto& nbrs = t.neighbors(cur);
            const AgentId next = nbrs[0] == prev ? nbrs[1] : nbrs[0];
            prev = cur;
            cur = next;
        }
        return order;
    }

    bool is_connected(const NetworkTopology& t, std::optional<AgentId> removed)
    {
        const std::size_t total = t.size() - (removed ? 1 : 0);
        if (total == 0)
        {
            return true;
        }
        std::vector<char> seen(t.size(), 0);
        std::deque<AgentId> queue;
        for (const auto& n : t.nodes())
        {
            if (!removed || n.id != *removed)
            {
                queue.push_back(n.id);
                seen[t.index_of(n.id)] = 1;
                break;
            }
        }
        std::size_t reached = 0;
        while (!queue.empty())
        {
            const AgentId cur = queue.front();
            queue.pop_front();
            ++reached;
            for (AgentId nb : t.neighbors(cur))
            {
                if (removed && nb == *removed)
                {
                    continue;
                }
                auto& flag = seen[t.index_of(nb)];
                if (!flag)
                {
                    flag = 1;
                    queue.push_back(nb);
                }
            }
        }
        return reached == total;
    }

    bool verify_two_connected(const NetworkTopology& t)
    {
        if (t.size() < 3 || !is_connected(t))
        {
            return false;
        }
        for (const auto& n : t.nodes())
        {
            if (!is_connected(t, n.id))
            {
                return false;
            }
        }
        return true;
    }

    NetworkTopology random_two_connected(std::size_t n, double chord_probability, std::uint64_t seed,
                                         const RingOptions& options)
    {
        NetworkTopology ring = build_ring(n, seed, options);
        RngStream rng(splitmix64(seed ^ 0x5bd1e995ULL));
        std::vector<NodeSpec> nodes = ring.nodes();
        std::vector<std::size_t> perm(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            perm[i] = i;
        }
        for (std::size_t i = n - 1; i > 0; --i)
        {
            std::swap(perm[i], perm[rng.uniform(0, i)]);
        }
        std::vector<Edge> edges;
        for (std::size_t i = 0; i < n; ++i)
        {
            edges.push_back(make_edge(nodes[perm[i]].id, nodes[perm[(i + 1) % n]].id));
        }
        const auto threshold = static_cast<std::uint64_t>(chord_probability * 1'000'000.0);
        for (std::size_t i = 0; i < n; ++i)
        {
            for (std::size_t j = i + 1; j < n; ++j)
            {
                const Edge e = make_edge(nodes[i].id, nodes[j].id);
                if (std::find(edges.begin(), edges.end(), e) != edges.end())
                {
                    continue;
                }
                if (rng.uniform(0, 999'999) < threshold)
                {
                    edges.push_back(e);
                }
            }
        }
        return NetworkTopology(std::move(nodes), edges);
    }

    std::vector<AgentId> fresh_ids(std::size_t count, std::uint64_t seed, const std::set<AgentId>& taken)
    {
        RngStream rng(seed);
        std::set<AgentId> used = taken;
        std::vector<AgentId> out;
        out.reserve(count);
        while (out.size() < count)
        {
            const AgentId id = rng.next_u64();
            // Collisions are resampled; id 0 is reserved.
            if (id != 0 && used.insert(id).second)
            {
                out.push_back(id);
            }
        }
        return out;
    }
}
