#pragma once

#include "ras/node_logic.hpp"
#include "ras/wakeup.hpp"

#include <map>
#include <optional>

namespace ras
{
    // Knowledge Sharing on a general graph without a size prior: graph
    // Wake-Up, then every input is flooded and each node outputs the sum
    // mod k once n' rounds of flooding have passed.
    class FloodKsLogic : public NodeLogic
    {
    public:
        FloodKsLogic(AgentId self, std::vector<AgentId> neighbors, std::uint64_t input, std::uint64_t k,
                     std::optional<std::size_t> size_bound, RngStream rng);

        // Overrides the input this node floods; used by emulating cheaters.
        void set_input(std::uint64_t input) { input_ = input % k_; }
        std::uint64_t input() const noexcept { return input_; }
        const std::map<AgentId, std::uint64_t>& known_inputs() const noexcept { return inputs_; }
        bool flooding() const noexcept { return started_; }

    protected:
        void on_step(NodeIo& io) override;

    private:
        GraphWakeUp wake_;
        std::uint64_t input_;
        std::uint64_t k_;
        bool started_ = false;
        Round base_ = 0;
        std::size_t n_prime_ = 0;
        std::map<AgentId, std::uint64_t> inputs_;
    };
}
