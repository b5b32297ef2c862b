#pragma once

#include "ras/protocols/circulate.hpp"

#include <optional>
#include <vector>

namespace ras
{
    // Index (0-based, descending id order) picked by the modular sum.
    std::size_t elected_rank(const std::vector<std::uint64_t>& contributions, std::size_t n);
    // The ((sum w) mod n')-th largest id of the cycle.
    AgentId elected_id(const RingView& view, const std::vector<std::uint64_t>& contributions);

    // Commit-then-reveal election: every node circulates a uniform
    // w in [0, n'-1] and the vector is cross-checked before use.
    class Election
    {
    public:
        explicit Election(RngStream rng) : rng_(rng), circulate_(Tag::Commit, Tag::CommitEcho) {}

        void start(const RingView& view, Round base);
        PhaseStatus step(NodeIo& io);

        bool started() const noexcept { return circulate_.started(); }
        Round end_round() const noexcept { return circulate_.end_round(); }
        AgentId winner() const noexcept { return winner_; }

    private:
        RngStream rng_;
        Circulate circulate_;
        RingView view_;
        AgentId winner_ = 0;
    };

    class LeaderElectionLogic : public NodeLogic
    {
    public:
        LeaderElectionLogic(AgentId self, std::vector<AgentId> neighbors, std::optional<std::size_t> size_bound,
                            RngStream rng);

    protected:
        void on_step(NodeIo& io) override;

    private:
        RingWakeUp wake_;
        Election election_;
    };
}
