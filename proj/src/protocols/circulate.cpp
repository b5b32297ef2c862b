#include "ras/protocols/circulate.hpp"

namespace ras
{
    void Circulate::start(const RingView& view, Round base, std::uint64_t own_value)
    {
        started_ = true;
        view_ = view;
        base_ = base;
        values_.assign(view.n_prime(), 0);
        have_.assign(view.n_prime(), 0);
        values_[view.position] = own_value;
        have_[view.position] = 1;
    }

    PhaseStatus Circulate::step(NodeIo& io)
    {
        if (done_)
        {
            return PhaseStatus::Done;
        }
        const std::size_t n = view_.n_prime();
        const Round local = io.round - base_;
        const AgentId self = view_.at(view_.position);
        if (local == 0)
        {
            io.send(view_.cw(), make_payload(value_tag_, self, values_[view_.position]));
            return PhaseStatus::Running;
        }
        if (local < n)
        {
            // The value from the node `local` hops counter-clockwise arrives now.
            const AgentId origin = view_.walk(view_.position, -static_cast<long>(local));
            bool got = false;
            for (const auto& m : io.inbox)
            {
                if (m.payload.tag != value_tag_)
                {
                    continue;
                }
                if (got || m.from != view_.ccw() || m.payload.words[0] != origin)
                {
                    return PhaseStatus::Failed;
                }
                got = true;
                values_[view_.position_of(origin)] = m.payload.words[1];
                have_[view_.position_of(origin)] = 1;
                if (local + 1 < n)
                {
                    io.send(view_.cw(), m.payload);
                }
            }
            if (!got)
            {
                return PhaseStatus::Failed;
            }
            if (local + 1 == n)
            {
                Payload echo = make_payload(echo_tag_);
                echo.vec = values_;
                io.send(view_.cw(), echo);
                io.send(view_.ccw(), echo);
            }
            return PhaseStatus::Running;
        }
        int matches = 0;
        for (const auto& m : io.inbox)
        {
            if (m.payload.tag == echo_tag_)
            {
                if (m.payload.vec != values_)
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
        return PhaseStatus::Done;
    }
}
