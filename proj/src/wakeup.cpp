#include "ras/wakeup.hpp"

#include <algorithm>

namespace ras
{
    AgentId RingView::walk(std::size_t pos, long hops) const
    {
        const long n = static_cast<long>(cycle.size());
        long p = (static_cast<long>(pos) + hops) % n;
        if (p < 0)
        {
            p += n;
        }
        return cycle[static_cast<std::size_t>(p)];
    }

    std::size_t RingView::position_of(AgentId id) const
    {
        return static_cast<std::size_t>(std::find(cycle.begin(), cycle.end(), id) - cycle.begin());
    }

    std::vector<AgentId> RingView::sorted_ids() const
    {
        std::vector<AgentId> ids = cycle;
        std::sort(ids.begin(), ids.end());
        return ids;
    }

    std::vector<AgentId> canonical_cycle(const std::vector<AgentId>& cyclic)
    {
        const std::size_t n = cyclic.size();
        const std::size_t top = static_cast<std::size_t>(std::max_element(cyclic.begin(), cyclic.end()) - cyclic.begin());
        const bool forward = cyclic[(top + 1) % n] < cyclic[(top + n - 1) % n];
        std::vector<AgentId> out;
        out.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            out.push_back(forward ? cyclic[(top + i) % n] : cyclic[(top + n - i) % n]);
        }
        return out;
    }

    RingWakeUp::RingWakeUp(AgentId self, AgentId a, AgentId b, std::optional<std::size_t> size_bound)
        : self_(self), side_a_(a), side_b_(b), bound_(size_bound)
    {
    }

    PhaseStatus RingWakeUp::step(NodeIo& io)
    {
        if (done_)
        {
            return PhaseStatus::Done;
        }
        if (met_)
        {
            // Comparison round: both neighbors must echo our exact cycle.
            int matches = 0;
            for (const auto& m : io.inbox)
            {
                if (m.payload.tag == Tag::IdEcho && (m.from == side_a_ || m.from == side_b_))
                {
                    if (canonical_cycle(m.payload.vec) != view_.cycle)
                    {
                        return PhaseStatus::Failed;
                    }
                    ++matches;
                }
            }
            if (matches != 2)
            {
                return PhaseStatus::Failed;
            }
            done_ = true;
            next_phase_ = io.round;
            return PhaseStatus::Done;
        }
        if (io.round == 0)
        {
            io.send(side_a_, make_payload(Tag::IdAnnounce, self_));
            io.send(side_b_, make_payload(Tag::IdAnnounce, self_));
            return PhaseStatus::Running;
        }
        std::optional<AgentId> got_a;
        std::optional<AgentId> got_b;
        for (const auto& m : io.inbox)
        {
            if (m.payload.tag != Tag::IdAnnounce)
            {
                continue;
            }
            if (m.from == side_a_ && !got_a)
            {
                got_a = m.payload.words[0];
            }
            else if (m.from == side_b_ && !got_b)
            {
                got_b = m.payload.words[0];
            }
            else
            {
                return PhaseStatus::Failed;
            }
        }
        if (!got_a || !got_b)
        {
            return PhaseStatus::Failed;
        }
        auto seen = [&](AgentId id) {
            return id == self_ || std::find(from_a_.begin(), from_a_.end(), id) != from_a_.end() ||
                   std::find(from_b_.begin(), from_b_.end(), id) != from_b_.end();
        };
        const bool seen_a = seen(*got_a);
        const bool seen_b = seen(*got_b);
        if (!seen_a && !seen_b && *got_a != *got_b)
        {
            from_a_.push_back(*got_a);
            from_b_.push_back(*got_b);
            io.send(side_b_, make_payload(Tag::IdAnnounce, *got_a));
            io.send(side_a_, make_payload(Tag::IdAnnounce, *got_b));
            if (bound_ && 1 + from_a_.size() + from_b_.size() > *bound_)
            {
                return PhaseStatus::Failed;
            }
            return PhaseStatus::Running;
        }
        if (!seen_a && !seen_b)
        {
            // Even ring: the antipodal id arrives from both sides at once.
            from_b_.push_back(*got_b);
        }
        else if (seen_a && seen_b)
        {
            // Odd ring: each side delivers the last id learned from the other.
            if (from_a_.empty() || *got_a != from_b_.back() || *got_b != from_a_.back())
            {
                return PhaseStatus::Failed;
            }
        }
        else
        {
            return PhaseStatus::Failed;
        }
        std::vector<AgentId> seq;
        seq.push_back(self_);
        seq.insert(seq.end(), from_b_.begin(), from_b_.end());
        seq.insert(seq.end(), from_a_.rbegin(), from_a_.rend());
        if (seq.size() < 3 || detect_oversize(seq.size(), bound_))
        {
            return PhaseStatus::Failed;
        }
        view_.cycle = canonical_cycle(seq);
        view_.position = view_.position_of(self_);
        met_ = true;
        Payload echo = make_payload(Tag::IdEcho);
        echo.vec = view_.cycle;
        io.send(side_a_, echo);
        io.send(side_b_, echo);
        return PhaseStatus::Running;
    }

    GraphWakeUp::GraphWakeUp(AgentId self, std::vector<AgentId> neighbors, std::optional<std::size_t> size_bound,
                             std::optional<std::size_t> exact_size)
        : self_(self), neighbors_(std::move(neighbors)), bound_(size_bound), exact_(exact_size)
    {
        known_.emplace_back(self_, neighbors_);
    }

    bool GraphWakeUp::closed() const
    {
        auto known = [&](AgentId id) {
            return std::any_of(known_.begin(), known_.end(), [&](const auto& k) { return k.first == id; });
        };
        for (const auto& [origin, list] : known_)
        {
            for (AgentId nb : list)
            {
                if (!known(nb))
                {
                    return false;
                }
            }
        }
        return true;
    }

    std::vector<std::uint64_t> GraphWakeUp::flattened_edges() const
    {
        std::vector<std::uint64_t> flat;
        for (const auto& [a, b] : view_.graph.edges())
        {
            flat.push_back(a);
            flat.push_back(b);
        }
        return flat;
    }

    PhaseStatus GraphWakeUp::step(NodeIo& io)
    {
        if (done_)
        {
            return PhaseStatus::Done;
        }
        if (io.round == 0)
        {
            Payload p = make_payload(Tag::TopologyAnnounce, self_);
            p.vec = neighbors_;
            for (AgentId nb : neighbors_)
            {
                io.send(nb, p);
            }
            return PhaseStatus::Running;
        }
        if (complete_ && io.round == echo_round_ + 1)
        {
            const auto mine = flattened_edges();
            std::size_t matches = 0;
            for (const auto& m : io.inbox)
            {
                if (m.payload.tag == Tag::TopologyEcho)
                {
                    if (m.payload.vec != mine)
                    {
                        return PhaseStatus::Failed;
                    }
                    ++matches;
                }
            }
            if (matches != neighbors_.size())
            {
                return PhaseStatus::Failed;
            }
            done_ = true;
            next_phase_ = io.round;
            return PhaseStatus::Done;
        }
        for (const auto& m : io.inbox)
        {
            if (m.payload.tag != Tag::TopologyAnnounce)
            {
                continue;
            }
            const AgentId origin = m.payload.words[0];
            auto it = std::find_if(known_.begin(), known_.end(), [&](const auto& k) { return k.first == origin; });
            if (it != known_.end())
            {
                if (it->second != m.payload.vec)
                {
                    return PhaseStatus::Failed;
                }
                continue;
            }
            if (complete_)
            {
                // Nothing new can exist once the known set is closed.
                return PhaseStatus::Failed;
            }
            known_.emplace_back(origin, m.payload.vec);
            for (AgentId nb : neighbors_)
            {
                io.send(nb, m.payload);
            }
        }
        if (bound_ && known_.size() > *bound_)
        {
            return PhaseStatus::Failed;
        }
        if (!complete_ && closed())
        {
            std::vector<NodeSpec> nodes;
            std::vector<Edge> edges;
            for (const auto& [origin, list] : known_)
            {
                nodes.push_back(NodeSpec{origin, 0, 0});
                for (AgentId nb : list)
                {
                    if (origin < nb)
                    {
                        edges.push_back(make_edge(origin, nb));
                    }
                }
            }
            std::sort(nodes.begin(), nodes.end(), [](const NodeSpec& a, const NodeSpec& b) { return a.id < b.id; });
            try
            {
                view_.graph = NetworkTopology(std::move(nodes), edges);
            }
            catch (const std::exception&)
            {
                return PhaseStatus::Failed;
            }
            // Every announced adjacency must be symmetric.
            for (const auto& [origin, list] : known_)
            {
                if (view_.graph.neighbors(origin) != list)
                {
                    return PhaseStatus::Failed;
                }
            }
            if (exact_ && view_.n_prime() != *exact_)
            {
                return PhaseStatus::Failed;
            }
            complete_ = true;
            echo_round_ = static_cast<Round>(view_.n_prime());
            if (io.round > echo_round_)
            {
                return PhaseStatus::Failed;
            }
        }
        if (complete_ && io.round == echo_round_)
        {
            Payload echo = make_payload(Tag::TopologyEcho);
            echo.vec = flattened_edges();
            for (AgentId nb : neighbors_)
            {
                io.send(nb, echo);
            }
        }
        return PhaseStatus::Running;
    }

    bool detect_oversize(std::size_t n_prime, std::optional<std::size_t> beta)
    {
        return beta && n_prime > *beta;
    }
}
