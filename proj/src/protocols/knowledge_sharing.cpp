#include "ras/protocols/knowledge_sharing.hpp"

#include <algorithm>

namespace ras
{
    ShareSplit split_secret(std::uint64_t input, std::uint64_t pad, std::uint64_t k)
    {
        pad %= k;
        return {pad, (input % k + k - pad) % k};
    }

    std::uint64_t reconstruct(std::uint64_t pad, std::uint64_t masked, std::uint64_t k)
    {
        return (pad % k + masked % k) % k;
    }

    std::uint64_t sum_mod(const std::vector<std::uint64_t>& values, std::uint64_t k)
    {
        std::uint64_t s = 0;
        for (auto v : values)
        {
            s = (s + v % k) % k;
        }
        return s;
    }

    std::size_t first_target(std::size_t pos, std::size_t n)
    {
        return (pos + 1) % n;
    }

    std::size_t second_target(std::size_t pos, std::size_t n)
    {
        return (pos + n - n / 2) % n;
    }

    std::vector<std::size_t> share_route(std::size_t n, std::size_t sender, std::size_t target, ShareKind kind)
    {
        auto next = [&](std::size_t p) { return kind == ShareKind::Pad ? (p + 1) % n : (p + n - 1) % n; };
        std::vector<std::size_t> route;
        std::size_t cur = sender;
        while (next(cur) != target)
        {
            cur = next(cur);
            route.push_back(cur);
        }
        if (route.empty())
        {
            route.push_back(sender);
        }
        return route;
    }

    std::vector<ObservedShare> pre_reveal_view(std::size_t n, std::size_t observer)
    {
        std::vector<ObservedShare> seen;
        for (std::size_t s = 0; s < n; ++s)
        {
            if (s == observer)
            {
                continue;
            }
            for (std::size_t t : {first_target(s, n), second_target(s, n)})
            {
                for (ShareKind kind : {ShareKind::Pad, ShareKind::Masked})
                {
                    const auto route = share_route(n, s, t, kind);
                    if (std::find(route.begin(), route.end(), observer) != route.end())
                    {
                        seen.push_back({s, t, kind});
                    }
                }
            }
        }
        return seen;
    }

    KsCore::KsCore(AgentId self, std::uint64_t input, std::uint64_t k, RngStream rng)
        : self_(self), input_(input % k), k_(k), rng_(rng)
    {
    }

    void KsCore::start(const RingView& view, Round base)
    {
        started_ = true;
        view_ = view;
        base_ = base;
    }

    void KsCore::route_share(NodeIo& io, const Payload& share)
    {
        const AgentId target = share.words[1];
        const bool pad = share.words[2] == static_cast<std::uint64_t>(ShareKind::Pad);
        const AgentId next = pad ? view_.cw() : view_.ccw();
        if (next == target)
        {
            held_.push_back({target, share});
        }
        else
        {
            io.send(next, share);
        }
    }

    PhaseStatus KsCore::step(NodeIo& io)
    {
        if (done_)
        {
            return PhaseStatus::Done;
        }
        const std::size_t n = view_.n_prime();
        const Round local = io.round - base_;
        const std::uint64_t reported = broadcast_override_.value_or(input_);

        if (local == 0)
        {
            for (std::size_t t : {first_target(view_.position, n), second_target(view_.position, n)})
            {
                const AgentId target = view_.at(t);
                const ShareSplit s = split_secret(input_, rng_.uniform(0, k_ - 1), k_);
                route_share(io, make_payload(Tag::SecretShare, self_, target,
                                             static_cast<std::uint64_t>(ShareKind::Pad), s.pad));
                route_share(io, make_payload(Tag::SecretShare, self_, target,
                                             static_cast<std::uint64_t>(ShareKind::Masked), s.masked));
            }
            return PhaseStatus::Running;
        }
        if (local < n)
        {
            for (const auto& m : io.inbox)
            {
                if (m.payload.tag != Tag::SecretShare)
                {
                    continue;
                }
                const bool pad = m.payload.words[2] == static_cast<std::uint64_t>(ShareKind::Pad);
                if (m.from != (pad ? view_.ccw() : view_.cw()) || m.payload.words[1] == self_)
                {
                    return PhaseStatus::Failed;
                }
                route_share(io, m.payload);
            }
            if (local + 1 == n)
            {
                for (const auto& h : held_)
                {
                    io.send(h.target, h.payload);
                }
                held_.clear();
            }
            return PhaseStatus::Running;
        }
        if (local == n)
        {
            for (const auto& m : io.inbox)
            {
                if (m.payload.tag != Tag::SecretShare || m.payload.words[1] != self_)
                {
                    continue;
                }
                const auto key = std::make_pair(m.payload.words[0], m.payload.words[2]);
                if (incoming_.count(key))
                {
                    return PhaseStatus::Failed;
                }
                incoming_[key] = m.payload.words[3];
            }
            const AgentId origins[] = {view_.walk(view_.position, -1),
                                       view_.walk(view_.position, static_cast<long>(n / 2))};
            for (AgentId origin : origins)
            {
                auto r = incoming_.find({origin, 0});
                auto x = incoming_.find({origin, 1});
                if (r == incoming_.end() || x == incoming_.end())
                {
                    if (checks_)
                    {
                        return PhaseStatus::Failed;
                    }
                    continue;
                }
                revealed_[origin] = reconstruct(r->second, x->second, k_);
            }
            return PhaseStatus::Running;
        }
        if (local == n + 1)
        {
            io.send(view_.cw(), make_payload(Tag::InputBroadcast, self_, reported));
            return PhaseStatus::Running;
        }
        // Broadcast hop h = local - n - 1 delivers the input of the node h
        // positions counter-clockwise.
        const std::size_t hop = local - n - 1;
        const AgentId origin = view_.walk(view_.position, -static_cast<long>(hop));
        bool got = false;
        for (const auto& m : io.inbox)
        {
            if (m.payload.tag != Tag::InputBroadcast)
            {
                continue;
            }
            if (got || m.from != view_.ccw() || m.payload.words[0] != origin)
            {
                return PhaseStatus::Failed;
            }
            got = true;
            broadcast_[origin] = m.payload.words[1] % k_;
            if (hop + 1 < n)
            {
                io.send(view_.cw(), m.payload);
            }
        }
        if (!got)
        {
            return PhaseStatus::Failed;
        }
        if (hop + 1 < n)
        {
            return PhaseStatus::Running;
        }
        if (checks_)
        {
            for (const auto& [who, value] : revealed_)
            {
                if (broadcast_.at(who) != value)
                {
                    return PhaseStatus::Failed;
                }
            }
        }
        std::uint64_t total = reported;
        for (const auto& [who, value] : broadcast_)
        {
            total = (total + value) % k_;
        }
        result_ = total;
        done_ = true;
        return PhaseStatus::Done;
    }

    KsLogic::KsLogic(AgentId self, std::vector<AgentId> neighbors, std::uint64_t input, std::uint64_t k,
                     std::optional<std::size_t> size_bound, RngStream rng)
        : NodeLogic(self, neighbors, rng), wake_(self, neighbors.at(0), neighbors.at(1), size_bound),
          core_(self, input, k, rng.substream(1))
    {
    }

    void KsLogic::on_step(NodeIo& io)
    {
        if (!core_.started())
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
            core_.start(wake_.view(), wake_.next_phase_round());
        }
        const auto status = core_.step(io);
        if (status == PhaseStatus::Failed)
        {
            fail(io);
        }
        else if (status == PhaseStatus::Done)
        {
            finish(Output::scalar(core_.result()));
        }
    }
}
