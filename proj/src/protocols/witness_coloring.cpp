#include "ras/protocols/witness_coloring.hpp"

#include "ras/error.hpp"
#include "ras/protocols/ring_coloring.hpp"

#include <algorithm>
#include <deque>

namespace ras
{
    std::uint64_t draw_value(const std::set<std::uint64_t>& available, std::uint64_t r_self, std::uint64_t r_witness)
    {
        const std::uint64_t size = available.size();
        const std::uint64_t q = (r_self + r_witness) % size;
        auto it = available.rbegin();
        std::advance(it, static_cast<long>(q));
        return *it;
    }

    AgentId witness_of(const NetworkTopology& g, AgentId a)
    {
        return g.neighbors(a).front();
    }

    std::vector<AgentId> prompt_path(const NetworkTopology& g, AgentId a, AgentId b)
    {
        const AgentId w = witness_of(g, a);
        if (w == b)
        {
            return {a, b};
        }
        std::map<AgentId, AgentId> parent;
        std::deque<AgentId> queue{w};
        parent[w] = w;
        while (!queue.empty() && !parent.count(b))
        {
            const AgentId cur = queue.front();
            queue.pop_front();
            for (AgentId nb : g.neighbors(cur))
            {
                if (nb != a && !parent.count(nb))
                {
                    parent[nb] = cur;
                    queue.push_back(nb);
                }
            }
        }
        if (!parent.count(b))
        {
            throw InvalidTopology("no witness route avoiding the prompted node");
        }
        std::vector<AgentId> rev;
        for (AgentId cur = b; cur != w; cur = parent[cur])
        {
            rev.push_back(cur);
        }
        rev.push_back(w);
        rev.push_back(a);
        return {rev.rbegin(), rev.rend()};
    }

    WitnessColoringLogic::WitnessColoringLogic(AgentId self, std::vector<AgentId> neighbors, std::uint64_t preference,
                                               std::size_t n, RngStream rng)
        : NodeLogic(self, neighbors, rng), preference_(preference), n_(n), wake_(self, neighbors, std::nullopt, n)
    {
    }

    void WitnessColoringLogic::on_step(NodeIo& io)
    {
        if (!awake_)
        {
            const auto status = wake_.step(io);
            if (status == PhaseStatus::Failed)
            {
                fail(io);
                return;
            }
            if (status == PhaseStatus::Running)
            {
                return;
            }
            awake_ = true;
            draw_base_ = io.round;
            for (const auto& node : wake_.view().graph.nodes())
            {
                order_.push_back(node.id);
            }
            std::sort(order_.rbegin(), order_.rend());
            witness_ = witness_of(wake_.view().graph, id());
        }
        const Round local = io.round - draw_base_;
        const Round prompt_start = static_cast<Round>(3 * n_);
        const Round color_start = prompt_start + static_cast<Round>(n_) + 1;
        bool ok = true;
        if (local <= prompt_start)
        {
            ok = draw_round(io);
        }
        if (ok && local >= prompt_start && local <= color_start)
        {
            ok = prompt_round(io);
        }
        if (ok && local >= color_start)
        {
            ok = color_round(io);
        }
        if (!ok)
        {
            fail(io);
        }
    }

    bool WitnessColoringLogic::draw_round(NodeIo& io)
    {
        const Round local = io.round - draw_base_;
        const std::size_t slot = local / 3;
        const int phase = static_cast<int>(local % 3);
        const AgentId drawer = slot < order_.size() ? order_[slot] : 0;
        const auto& g = wake_.view().graph;

        std::optional<std::uint64_t> exchange;
        for (const auto& m : io.inbox)
        {
            switch (m.payload.tag)
            {
            case Tag::DrawnValue:
            {
                const std::uint64_t s = m.payload.words[0];
                if (published_.count(m.from) || s < 1 || s > n_)
                {
                    return false;
                }
                // A neighbor of ours may only claim a rank we have not witnessed otherwise.
                auto w = witnessed_.find(m.from);
                if (w != witnessed_.end() && w->second != s)
                {
                    return false;
                }
                published_[m.from] = s;
                break;
            }
            case Tag::WitnessMark:
                if (m.from != drawer || phase != 1 || witness_of(g, drawer) != id() || m.payload.vec.empty())
                {
                    return false;
                }
                witnessed_available_ = {m.payload.vec.begin(), m.payload.vec.end()};
                r_witness_ = rng().uniform(1, witnessed_available_.size());
                io.send(drawer, make_payload(Tag::DrawExchange, r_witness_));
                break;
            case Tag::DrawExchange:
                if (phase != 2 || exchange || m.from != (drawer == id() ? witness_ : drawer))
                {
                    return false;
                }
                exchange = m.payload.words[0];
                break;
            default:
                break;
            }
        }

        if (drawer == 0)
        {
            return true;
        }
        if (drawer == id())
        {
            if (phase == 0)
            {
                available_.clear();
                for (std::uint64_t v = 1; v <= n_; ++v)
                {
                    available_.insert(v);
                }
                for (const auto& [nb, s] : published_)
                {
                    available_.erase(s);
                }
                if (available_.empty())
                {
                    return false;
                }
                Payload mark = make_payload(Tag::WitnessMark);
                mark.vec.assign(available_.begin(), available_.end());
                io.send(witness_, mark);
                r_self_ = rng().uniform(1, available_.size());
            }
            else if (phase == 1)
            {
                io.send(witness_, make_payload(Tag::DrawExchange, r_self_));
            }
            else
            {
                if (!exchange)
                {
                    return false;
                }
                rank_ = draw_value(available_, r_self_, *exchange);
                send_all(io, make_payload(Tag::DrawnValue, *rank_));
            }
        }
        else if (witness_of(g, drawer) == id() && phase == 2)
        {
            if (!exchange || witnessed_available_.empty())
            {
                return false;
            }
            witnessed_[drawer] = draw_value(witnessed_available_, *exchange, r_witness_);
        }
        else if (exchange)
        {
            return false;
        }
        return true;
    }

    bool WitnessColoringLogic::prompt_round(NodeIo& io)
    {
        const Round local = io.round - draw_base_;
        const Round prompt_start = static_cast<Round>(3 * n_);
        const auto& g = wake_.view().graph;
        if (local == prompt_start)
        {
            if (!rank_ || published_.size() != neighbors().size())
            {
                return false;
            }
            send_all(io, make_payload(Tag::Prompt));
            return true;
        }
        for (const auto& m : io.inbox)
        {
            const auto& path = m.payload.vec;
            switch (m.payload.tag)
            {
            case Tag::Prompt:
                if (local != prompt_start + 1)
                {
                    return false;
                }
                io.send(m.from, make_payload(Tag::PromptReply, *rank_));
                if (witness_ != m.from)
                {
                    Payload p = make_payload(Tag::PromptWitness, id(), m.from, *rank_, 1);
                    p.vec = prompt_path(g, id(), m.from);
                    io.send(witness_, p);
                }
                break;
            case Tag::PromptReply:
                if (direct_.count(m.from))
                {
                    return false;
                }
                direct_[m.from] = m.payload.words[0];
                break;
            case Tag::PromptWitness:
            case Tag::Relay:
            {
                const AgentId a = m.payload.words[0];
                const AgentId b = m.payload.words[1];
                const std::uint64_t s = m.payload.words[2];
                const std::size_t idx = m.payload.words[3];
                if (idx == 0 || idx >= path.size() || path[idx] != id() || path[idx - 1] != m.from || path.back() != b ||
                    path.front() != a || path != prompt_path(g, a, b))
                {
                    return false;
                }
                if (m.payload.tag == Tag::PromptWitness)
                {
                    // Only the witness of a may vouch for its rank.
                    auto w = witnessed_.find(a);
                    if (witness_of(g, a) != id() || idx != 1 || w == witnessed_.end() || w->second != s)
                    {
                        return false;
                    }
                }
                if (b == id())
                {
                    relayed_[a] = s;
                }
                else
                {
                    Payload next = m.payload;
                    next.tag = Tag::Relay;
                    next.words[3] = idx + 1;
                    io.send(path[idx + 1], next);
                }
                break;
            }
            default:
                break;
            }
        }
        const Round color_start = prompt_start + static_cast<Round>(n_) + 1;
        if (local == color_start)
        {
            for (AgentId nb : neighbors())
            {
                const std::uint64_t announced = published_.at(nb);
                auto d = direct_.find(nb);
                if (d == direct_.end() || d->second != announced)
                {
                    return false;
                }
                if (witness_of(g, nb) == id())
                {
                    auto w = witnessed_.find(nb);
                    if (w == witnessed_.end() || w->second != announced)
                    {
                        return false;
                    }
                }
                else
                {
                    auto r = relayed_.find(nb);
                    if (r == relayed_.end() || r->second != announced)
                    {
                        return false;
                    }
                }
            }
        }
        return true;
    }

    bool WitnessColoringLogic::color_round(NodeIo& io)
    {
        const Round local = io.round - draw_base_;
        const Round color_start = static_cast<Round>(3 * n_) + static_cast<Round>(n_) + 1;
        for (const auto& m : io.inbox)
        {
            if (m.payload.tag == Tag::Color)
            {
                const std::uint64_t from_rank = published_.at(m.from);
                if (local != color_start + from_rank)
                {
                    return false;
                }
                neighbor_colors_.insert(m.payload.words[0]);
            }
        }
        if (local == color_start + *rank_ - 1)
        {
            const std::uint64_t color = choose_color(preference_, neighbor_colors_);
            send_all(io, make_payload(Tag::Color, color));
            finish(Output::scalar(color));
        }
        return true;
    }
}
