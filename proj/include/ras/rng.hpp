#pragma once

#include <cstdint>
#include <random>

namespace ras
{
    std::uint64_t splitmix64(std::uint64_t x) noexcept;

    // Seed for run `index` of a sweep; parallel runs share nothing else.
    std::uint64_t derive_run_seed(std::uint64_t master, std::uint64_t index) noexcept;

    // Deterministic random stream. Substreams are pure functions of
    // (seed, key), so an agent's draws depend only on the run seed and its id.
    class RngStream
    {
    public:
        explicit RngStream(std::uint64_t seed);

        std::uint64_t seed() const noexcept { return seed_; }

        RngStream substream(std::uint64_t key) const;

        std::uint64_t next_u64();

        // Uniform integer in [lo, hi].
        std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);

        bool bit() { return uniform(0, 1) == 1; }

    private:
        std::uint64_t seed_;
        std::mt19937_64 engine_;
    };
}
