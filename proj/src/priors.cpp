#include "ras/priors.hpp"

#include "ras/error.hpp"
#include "ras/wakeup.hpp"

namespace ras
{
    namespace
    {
        void check_bounds(std::int64_t alpha, std::int64_t beta)
        {
            if (alpha < 1 || beta < alpha)
            {
                throw SchemaError("prior needs 1 <= alpha <= beta, got [" + std::to_string(alpha) + "," +
                                  std::to_string(beta) + "]");
            }
        }

        void require_finite(const PriorSpec& p)
        {
            if (!p.finite())
            {
                throw UnsupportedQuery("unbounded prior has no pmf/cdf");
            }
        }

        BigInt ceil_div(const BigInt& num, const BigInt& den)
        {
            BigInt q = num / den;
            if (q * den != num)
            {
                ++q;
            }
            return q;
        }
    }

    PriorSpec PriorSpec::uniform(std::int64_t alpha, std::int64_t beta)
    {
        check_bounds(alpha, beta);
        return {PriorKind::Uniform, alpha, beta};
    }

    PriorSpec PriorSpec::geometric(std::int64_t alpha, std::int64_t beta)
    {
        check_bounds(alpha, beta);
        return {PriorKind::GeometricHalf, alpha, beta};
    }

    PriorSpec PriorSpec::point(std::int64_t n)
    {
        check_bounds(n, n);
        return {PriorKind::Point, n, n};
    }

    PriorSpec PriorSpec::unbounded(std::int64_t alpha)
    {
        check_bounds(alpha, alpha);
        return {PriorKind::Unbounded, alpha, alpha};
    }

    std::optional<std::size_t> PriorSpec::size_bound() const
    {
        if (!finite())
        {
            return std::nullopt;
        }
        return static_cast<std::size_t>(beta);
    }

    std::string prior_kind_name(PriorKind kind)
    {
        switch (kind)
        {
        case PriorKind::Uniform: return "uniform";
        case PriorKind::GeometricHalf: return "geometric";
        case PriorKind::Point: return "point";
        case PriorKind::Unbounded: return "unbounded";
        }
        return "?";
    }

    PriorKind prior_kind_from_name(const std::string& name)
    {
        if (name == "uniform") return PriorKind::Uniform;
        if (name == "geometric") return PriorKind::GeometricHalf;
        if (name == "point") return PriorKind::Point;
        if (name == "unbounded") return PriorKind::Unbounded;
        throw SchemaError("unknown prior kind: " + name);
    }

    std::string describe(const PriorSpec& p)
    {
        if (!p.finite())
        {
            return "unbounded";
        }
        return prior_kind_name(p.kind) + "[" + std::to_string(p.alpha) + "," + std::to_string(p.beta) + "]";
    }

    Rational pmf(const PriorSpec& p, std::int64_t t)
    {
        require_finite(p);
        if (t < p.alpha || t > p.beta)
        {
            return Rational(0);
        }
        switch (p.kind)
        {
        case PriorKind::Point:
        case PriorKind::Uniform:
            return ratio(1, p.beta - p.alpha + 1);
        case PriorKind::GeometricHalf:
        {
            // Halving mass plus an even share of the tail beyond beta.
            const Rational c = pow2(p.alpha - p.beta - 1) / Rational(p.beta - p.alpha + 1);
            return pow2(p.alpha - t - 1) + c;
        }
        case PriorKind::Unbounded:
            break;
        }
        throw UnsupportedQuery("pmf");
    }

    Rational cdf(const PriorSpec& p, std::int64_t t)
    {
        require_finite(p);
        if (t < p.alpha)
        {
            return Rational(0);
        }
        if (t >= p.beta)
        {
            return Rational(1);
        }
        switch (p.kind)
        {
        case PriorKind::Point:
        case PriorKind::Uniform:
            return ratio(t - p.alpha + 1, p.beta - p.alpha + 1);
        case PriorKind::GeometricHalf:
        {
            const Rational c = pow2(p.alpha - p.beta - 1) / Rational(p.beta - p.alpha + 1);
            return Rational(1) - pow2(p.alpha - t - 1) + Rational(t - p.alpha + 1) * c;
        }
        case PriorKind::Unbounded:
            break;
        }
        throw UnsupportedQuery("cdf");
    }

    PriorSampler::PriorSampler(const PriorSpec& p) : alpha_(p.alpha)
    {
        require_finite(p);
        const BigInt scale = BigInt(1) << 64;
        for (std::int64_t t = p.alpha; t <= p.beta; ++t)
        {
            const Rational f = cdf(p, t);
            thresholds_.push_back(ceil_div(boost::multiprecision::numerator(f) * scale,
                                           boost::multiprecision::denominator(f)));
        }
    }

    std::int64_t PriorSampler::operator()(RngStream& rng) const
    {
        const BigInt u = rng.next_u64();
        for (std::size_t i = 0; i < thresholds_.size(); ++i)
        {
            if (u < thresholds_[i])
            {
                return alpha_ + static_cast<std::int64_t>(i);
            }
        }
        return alpha_ + static_cast<std::int64_t>(thresholds_.size()) - 1;
    }

    std::int64_t sample(const PriorSpec& p, RngStream& rng)
    {
        return PriorSampler(p)(rng);
    }

    bool detect_oversize(std::size_t n_prime, const PriorSpec& prior)
    {
        return detect_oversize(n_prime, prior.size_bound());
    }
}
