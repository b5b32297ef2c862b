#pragma once

#include "ras/engine.hpp"
#include "ras/node_logic.hpp"
#include "ras/wakeup.hpp"

#include <map>
#include <optional>
#include <vector>

namespace ras
{
    // Mod-k one-time pad: pad R travels clockwise, masked X = (i - R) mod k
    // travels counter-clockwise.
    struct ShareSplit
    {
        std::uint64_t pad = 0;
        std::uint64_t masked = 0;
    };

    ShareSplit split_secret(std::uint64_t input, std::uint64_t pad, std::uint64_t k);
    std::uint64_t reconstruct(std::uint64_t pad, std::uint64_t masked, std::uint64_t k);
    std::uint64_t sum_mod(const std::vector<std::uint64_t>& values, std::uint64_t k);

    enum class ShareKind : std::uint8_t
    {
        Pad = 0,
        Masked = 1,
    };

    // Secret-Transmit targets of the node at `pos` on a ring of n nodes:
    // its clockwise neighbor and the node floor(n/2) counter-clockwise.
    std::size_t first_target(std::size_t pos, std::size_t n);
    std::size_t second_target(std::size_t pos, std::size_t n);

    // Positions that hold a share on its way from sender to target, in hop
    // order; the last one is the holder that hands it over at round n-1.
    // The sender itself is listed when it holds its own share.
    std::vector<std::size_t> share_route(std::size_t n, std::size_t sender, std::size_t target, ShareKind kind);

    struct ObservedShare
    {
        std::size_t sender = 0;
        std::size_t target = 0;
        ShareKind kind = ShareKind::Pad;
    };

    // Every share a non-sender observer sees before any reveal.
    std::vector<ObservedShare> pre_reveal_view(std::size_t n, std::size_t observer);

    // Algorithm body after Wake-Up: Secret-Transmit with reveal at local
    // round n', input broadcast from n'+1, output at 2n'.
    class KsCore
    {
    public:
        KsCore(AgentId self, std::uint64_t input, std::uint64_t k, RngStream rng);

        void start(const RingView& view, Round base);
        PhaseStatus step(NodeIo& io);

        bool started() const noexcept { return started_; }
        std::uint64_t result() const noexcept { return result_; }
        const RingView& view() const noexcept { return view_; }
        Round base() const noexcept { return base_; }
        std::uint64_t k() const noexcept { return k_; }
        std::uint64_t input() const noexcept { return input_; }

        // Hooks for a cheater steering its own virtual nodes.
        void override_broadcast(std::uint64_t value) { broadcast_override_ = value; }
        void disable_checks() { checks_ = false; }

        // Inputs reconstructed at the reveal round, keyed by origin.
        const std::map<AgentId, std::uint64_t>& revealed() const noexcept { return revealed_; }

    private:
        struct Held
        {
            AgentId target;
            Payload payload;
        };

        void route_share(NodeIo& io, const Payload& share);

        AgentId self_;
        std::uint64_t input_;
        std::uint64_t k_;
        RngStream rng_;
        bool started_ = false;
        bool done_ = false;
        bool checks_ = true;
        std::optional<std::uint64_t> broadcast_override_;
        RingView view_;
        Round base_ = 0;
        std::vector<Held> held_;
        std::map<std::pair<AgentId, std::uint64_t>, std::uint64_t> incoming_;
        std::map<AgentId, std::uint64_t> revealed_;
        std::map<AgentId, std::uint64_t> broadcast_;
        std::uint64_t result_ = 0;
    };

    class KsLogic : public NodeLogic
    {
    public:
        KsLogic(AgentId self, std::vector<AgentId> neighbors, std::uint64_t input, std::uint64_t k,
                std::optional<std::size_t> size_bound, RngStream rng);

        RingWakeUp& wake() { return wake_; }
        KsCore& core() { return core_; }
        const KsCore& core() const { return core_; }

    protected:
        void on_step(NodeIo& io) override;

    private:
        RingWakeUp wake_;
        KsCore core_;
    };
}
