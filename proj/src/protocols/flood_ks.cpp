#include "ras/protocols/flood_ks.hpp"

namespace ras
{
    FloodKsLogic::FloodKsLogic(AgentId self, std::vector<AgentId> neighbors, std::uint64_t input, std::uint64_t k,
                               std::optional<std::size_t> size_bound, RngStream rng)
        : NodeLogic(self, neighbors, rng), wake_(self, neighbors, size_bound), input_(input % k), k_(k)
    {
    }

    void FloodKsLogic::on_step(NodeIo& io)
    {
        if (!started_)
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
            started_ = true;
            base_ = wake_.next_phase_round();
            n_prime_ = wake_.view().n_prime();
            inputs_[id()] = input_;
            send_all(io, make_payload(Tag::InputBroadcast, id(), input_));
            return;
        }
        for (const auto& m : io.inbox)
        {
            if (m.payload.tag != Tag::InputBroadcast)
            {
                continue;
            }
            const AgentId origin = m.payload.words[0];
            const std::uint64_t value = m.payload.words[1] % k_;
            if (!wake_.view().graph.contains(origin))
            {
                fail(io);
                return;
            }
            auto it = inputs_.find(origin);
            if (it != inputs_.end())
            {
                if (it->second != value)
                {
                    fail(io);
                    return;
                }
                continue;
            }
            inputs_[origin] = value;
            send_all(io, m.payload);
        }
        if (io.round - base_ >= n_prime_)
        {
            if (inputs_.size() != n_prime_)
            {
                fail(io);
                return;
            }
            std::uint64_t total = 0;
            for (const auto& [who, v] : inputs_)
            {
                total = (total + v) % k_;
            }
            finish(Output::scalar(total));
        }
    }
}
