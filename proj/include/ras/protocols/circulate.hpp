#pragma once

#include "ras/node_logic.hpp"
#include "ras/wakeup.hpp"

#include <vector>

namespace ras
{
    // Each node sends one value clockwise; values are forwarded n'-1 hops
    // with a round check on every hop, the assembled vector is echoed to
    // both neighbors at local round n'-1 and compared at n'.
    class Circulate
    {
    public:
        Circulate(Tag value_tag, Tag echo_tag) : value_tag_(value_tag), echo_tag_(echo_tag) {}

        void start(const RingView& view, Round base, std::uint64_t own_value);
        PhaseStatus step(NodeIo& io);

        bool started() const noexcept { return started_; }
        Round end_round() const noexcept { return base_ + static_cast<Round>(view_.n_prime()); }
        // Indexed by canonical position.
        const std::vector<std::uint64_t>& values() const noexcept { return values_; }

    private:
        Tag value_tag_;
        Tag echo_tag_;
        bool started_ = false;
        bool done_ = false;
        RingView view_;
        Round base_ = 0;
        std::vector<std::uint64_t> values_;
        std::vector<char> have_;
    };
}
