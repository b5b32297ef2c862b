#pragma once

#include "ras/rational.hpp"
#include "ras/rng.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ras
{
    enum class PriorKind : std::uint8_t
    {
        Uniform,
        GeometricHalf,
        Point,
        Unbounded,
    };

    struct PriorSpec
    {
        PriorKind kind = PriorKind::Uniform;
        std::int64_t alpha = 1;
        std::int64_t beta = 1; // ignored for Unbounded

        static PriorSpec uniform(std::int64_t alpha, std::int64_t beta);
        static PriorSpec geometric(std::int64_t alpha, std::int64_t beta);
        static PriorSpec point(std::int64_t n);
        static PriorSpec unbounded(std::int64_t alpha = 1);

        bool finite() const noexcept { return kind != PriorKind::Unbounded; }
        // Largest admissible size, empty for Unbounded.
        std::optional<std::size_t> size_bound() const;

        friend bool operator==(const PriorSpec&, const PriorSpec&) = default;
    };

    // Config names: "uniform", "geometric", "point", "unbounded".
    std::string prior_kind_name(PriorKind kind);
    PriorKind prior_kind_from_name(const std::string& name);
    // e.g. "uniform[3,7]".
    std::string describe(const PriorSpec& p);

    Rational pmf(const PriorSpec& p, std::int64_t t);
    Rational cdf(const PriorSpec& p, std::int64_t t);

    // Inverse-cdf draw. The 64-bit uniform is compared against the exact
    // cdf, so the only approximation is the 2^-64 grid.
    std::int64_t sample(const PriorSpec& p, RngStream& rng);

    // Caches the cdf thresholds for repeated draws from one prior.
    class PriorSampler
    {
    public:
        explicit PriorSampler(const PriorSpec& p);
        std::int64_t operator()(RngStream& rng) const;

    private:
        std::int64_t alpha_;
        std::vector<BigInt> thresholds_; // ceil(cdf(t) * 2^64), t = alpha..beta
    };

    bool detect_oversize(std::size_t n_prime, const PriorSpec& prior);
}
