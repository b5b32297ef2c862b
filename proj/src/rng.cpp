#include "ras/rng.hpp"

namespace ras
{
    std::uint64_t splitmix64(std::uint64_t x) noexcept
    {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::uint64_t derive_run_seed(std::uint64_t master, std::uint64_t index) noexcept
    {
        return splitmix64(master ^ splitmix64(index + 0x632be59bd9b4e019ULL));
    }

    RngStream::RngStream(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed))
    {
    }

    RngStream RngStream::substream(std::uint64_t key) const
    {
        return RngStream(splitmix64(seed_ ^ splitmix64(key ^ 0xd1b54a32d192ed03ULL)));
    }

    std::uint64_t RngStream::next_u64()
    {
        return engine_();
    }

    std::uint64_t RngStream::uniform(std::uint64_t lo, std::uint64_t hi)
    {
        std::uniform_int_distribution<std::uint64_t> dist(lo, hi);
        return dist(engine_);
    }
}
