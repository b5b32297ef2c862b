#pragma once

#include "ras/protocols/knowledge_sharing.hpp"
#include "ras/protocols/leader_election.hpp"

#include <optional>
#include <set>
#include <vector>

namespace ras
{
    // Step (9..12) at which each canonical position picks its color, given
    // the preference vector, the sink position (if any) and the coin.
    std::vector<int> ring_color_steps(const std::vector<std::uint64_t>& prefs, std::optional<std::size_t> sink,
                                      std::uint64_t coin);

    // Preference when no neighbor holds it, otherwise the least unused color.
    std::uint64_t choose_color(std::uint64_t preference, const std::set<std::uint64_t>& neighbor_colors);

    bool needs_sink(const std::vector<std::uint64_t>& prefs);

    class RingColoringLogic : public NodeLogic
    {
    public:
        RingColoringLogic(AgentId self, std::vector<AgentId> neighbors, std::uint64_t preference,
                          std::optional<std::size_t> size_bound, RngStream rng);

    protected:
        void on_step(NodeIo& io) override;

    private:
        enum class Phase
        {
            WakeUp,
            Preferences,
            Sink,
            Coin,
            Colors,
        };

        void begin_coin(Round base);

        std::uint64_t preference_;
        Phase phase_ = Phase::WakeUp;
        RingWakeUp wake_;
        Circulate prefs_;
        Election sink_election_;
        KsCore coin_;
        std::optional<std::size_t> sink_;
        int my_step_ = 0;
        Round steps_base_ = 0;
        std::set<std::uint64_t> neighbor_colors_;
    };
}
