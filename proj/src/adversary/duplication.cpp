#include "ras/adversary/duplication.hpp"

#include "ras/error.hpp"

#include <algorithm>

namespace ras
{
    ExpandedTopology apply_duplication(const NetworkTopology& t, const DuplicationScheme& scheme, std::uint64_t seed)
    {
        if (scheme.d == 0)
        {
            throw InvalidScheme("duplication count must be at least 1");
        }
        if (!t.contains(scheme.cheater))
        {
            throw InvalidScheme("cheater is not part of the topology");
        }
        ExpandedTopology out;
        out.scheme = scheme;
        if (scheme.d == 1)
        {
            out.graph = t;
            out.virtual_nodes = {scheme.cheater};
            return out;
        }
        std::set<AgentId> taken;
        for (const auto& n : t.nodes())
        {
            taken.insert(n.id);
        }
        const auto extra = fresh_ids(scheme.d - 1, seed, taken);
        out.virtual_nodes.push_back(scheme.cheater);
        out.virtual_nodes.insert(out.virtual_nodes.end(), extra.begin(), extra.end());

        const NodeSpec& original = t.node(scheme.cheater);
        std::vector<NodeSpec> nodes;
        std::vector<Edge> edges;
        for (const auto& n : t.nodes())
        {
            if (n.id != scheme.cheater)
            {
                nodes.push_back(n);
                continue;
            }
            for (AgentId v : out.virtual_nodes)
            {
                NodeSpec spec = original;
                spec.id = v;
                nodes.push_back(spec);
            }
        }
        for (const auto& [a, b] : t.edges())
        {
            if (a != scheme.cheater && b != scheme.cheater)
            {
                edges.emplace_back(a, b);
            }
        }
        const auto& nbrs = t.neighbors(scheme.cheater);
        const std::size_t split = (nbrs.size() + 1) / 2;
        const AgentId first = out.virtual_nodes.front();
        const AgentId last = out.virtual_nodes.back();
        for (std::size_t i = 0; i < nbrs.size(); ++i)
        {
            edges.push_back(make_edge(i < split ? first : last, nbrs[i]));
        }
        for (std::size_t i = 0; i + 1 < out.virtual_nodes.size(); ++i)
        {
            edges.push_back(make_edge(out.virtual_nodes[i], out.virtual_nodes[i + 1]));
        }
        out.graph = NetworkTopology(std::move(nodes), edges);
        return out;
    }
}
