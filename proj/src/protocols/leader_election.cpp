#include "ras/protocols/leader_election.hpp"

#include <algorithm>

namespace ras
{
    std::size_t elected_rank(const std::vector<std::uint64_t>& contributions, std::size_t n)
    {
        std::uint64_t s = 0;
        for (auto w : contributions)
        {
            s = (s + w % n) % n;
        }
        return static_cast<std::size_t>(s);
    }

    AgentId elected_id(const RingView& view, const std::vector<std::uint64_t>& contributions)
    {
        auto ids = view.sorted_ids();
        std::reverse(ids.begin(), ids.end());
        return ids[elected_rank(contributions, ids.size())];
    }

    void Election::start(const RingView& view, Round base)
    {
        view_ = view;
        circulate_.start(view, base, rng_.uniform(0, view.n_prime() - 1));
    }

    PhaseStatus Election::step(NodeIo& io)
    {
        const auto status = circulate_.step(io);
        if (status == PhaseStatus::Done)
        {
            winner_ = elected_id(view_, circulate_.values());
        }
        return status;
    }

    LeaderElectionLogic::LeaderElectionLogic(AgentId self, std::vector<AgentId> neighbors,
                                             std::optional<std::size_t> size_bound, RngStream rng)
        : NodeLogic(self, neighbors, rng), wake_(self, neighbors.at(0), neighbors.at(1), size_bound),
          election_(rng.substream(2))
    {
    }

    void LeaderElectionLogic::on_step(NodeIo& io)
    {
        if (!election_.started())
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
            election_.start(wake_.view(), wake_.next_phase_round());
        }
        const auto status = election_.step(io);
        if (status == PhaseStatus::Failed)
        {
            fail(io);
        }
        else if (status == PhaseStatus::Done)
        {
            finish(Output::scalar(election_.winner() == id() ? 1 : 0));
        }
    }
}
