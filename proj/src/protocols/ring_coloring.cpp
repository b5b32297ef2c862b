#include "ras/protocols/ring_coloring.hpp"

#include <algorithm>

namespace ras
{
    bool needs_sink(const std::vector<std::uint64_t>& prefs)
    {
        return prefs.size() % 2 == 1 &&
               std::adjacent_find(prefs.begin(), prefs.end(), std::not_equal_to<>()) == prefs.end();
    }

    std::vector<int> ring_color_steps(const std::vector<std::uint64_t>& prefs, std::optional<std::size_t> sink,
                                      std::uint64_t coin)
    {
        const std::size_t n = prefs.size();
        std::vector<int> steps(n, 0);
        // Groups as (first position, size) in clockwise order.
        std::vector<std::pair<std::size_t, std::size_t>> groups;
        const bool unanimous =
            std::adjacent_find(prefs.begin(), prefs.end(), std::not_equal_to<>()) == prefs.end();
        if (sink)
        {
            steps[*sink] = 12;
            groups.emplace_back((*sink + 1) % n, n - 1);
        }
        else if (unanimous)
        {
            groups.emplace_back(0, n);
        }
        else
        {
            for (std::size_t i = 0; i < n; ++i)
            {
                if (prefs[(i + n - 1) % n] == prefs[i])
                {
                    continue;
                }
                std::size_t len = 1;
                while (prefs[(i + len) % n] == prefs[i])
                {
                    ++len;
                }
                groups.emplace_back(i, len);
            }
        }
        for (const auto& [first, size] : groups)
        {
            for (std::size_t i = 1; i <= size; ++i)
            {
                int step = 10;
                if (size == 1 || i % 2 == coin % 2)
                {
                    step = 9;
                }
                else if (i == size)
                {
                    step = 11;
                }
                steps[(first + i - 1) % n] = step;
            }
        }
        return steps;
    }

    std::uint64_t choose_color(std::uint64_t preference, const std::set<std::uint64_t>& neighbor_colors)
    {
        if (!neighbor_colors.count(preference))
        {
            return preference;
        }
        std::uint64_t c = 0;
        while (neighbor_colors.count(c))
        {
            ++c;
        }
        return c;
    }

    RingColoringLogic::RingColoringLogic(AgentId self, std::vector<AgentId> neighbors, std::uint64_t preference,
                                         std::optional<std::size_t> size_bound, RngStream rng)
        : NodeLogic(self, neighbors, rng), preference_(preference),
          wake_(self, neighbors.at(0), neighbors.at(1), size_bound), prefs_(Tag::Preference, Tag::PreferenceEcho),
          sink_election_(rng.substream(2)), coin_(self, rng.substream(3).bit() ? 1 : 0, 2, rng.substream(4))
    {
    }

    void RingColoringLogic::begin_coin(Round base)
    {
        phase_ = Phase::Coin;
        coin_.start(wake_.view(), base);
    }

    void RingColoringLogic::on_step(NodeIo& io)
    {
        auto advance = [&](PhaseStatus status) {
            if (status == PhaseStatus::Failed)
            {
                fail(io);
            }
            return status == PhaseStatus::Done;
        };
        if (phase_ == Phase::WakeUp)
        {
            if (!advance(wake_.step(io)))
            {
                return;
            }
            phase_ = Phase::Preferences;
            prefs_.start(wake_.view(), io.round, preference_);
        }
        if (phase_ == Phase::Preferences)
        {
            if (!advance(prefs_.step(io)))
            {
                return;
            }
            if (needs_sink(prefs_.values()))
            {
                phase_ = Phase::Sink;
                sink_election_.start(wake_.view(), io.round);
            }
            else
            {
                begin_coin(io.round);
            }
        }
        if (phase_ == Phase::Sink)
        {
            if (!advance(sink_election_.step(io)))
            {
                return;
            }
            sink_ = wake_.view().position_of(sink_election_.winner());
            begin_coin(io.round);
        }
        if (phase_ == Phase::Coin)
        {
            if (!advance(coin_.step(io)))
            {
                return;
            }
            phase_ = Phase::Colors;
            steps_base_ = io.round;
            my_step_ = ring_color_steps(prefs_.values(), sink_, coin_.result())[wake_.view().position];
        }
        for (const auto& m : io.inbox)
        {
            if (m.payload.tag == Tag::Color)
            {
                neighbor_colors_.insert(m.payload.words[0]);
            }
        }
        const int step_now = 9 + static_cast<int>(io.round - steps_base_);
        if (step_now == my_step_)
        {
            const std::uint64_t color = my_step_ == 9 ? preference_ : choose_color(preference_, neighbor_colors_);
            send_all(io, make_payload(Tag::Color, color));
            finish(Output::scalar(color));
        }
    }
}
