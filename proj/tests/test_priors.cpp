#include "ras/error.hpp"
#include "ras/priors.hpp"

#include <doctest.h>

#include <cmath>
#include <map>

using namespace ras;

namespace
{
    // Geometric-half mass written out term by term.
    Rational geometric_oracle(std::int64_t a, std::int64_t b, std::int64_t t)
    {
        if (t < a || t > b)
        {
            return 0;
        }
        Rational halving = 1;
        for (std::int64_t i = a; i <= t; ++i)
        {
            halving /= 2;
        }
        Rational tail = 1;
        for (std::int64_t i = a; i <= b; ++i)
        {
            tail /= 2;
        }
        return halving + tail / (b - a + 1);
    }
}

TEST_CASE("pmf examples")
{
    CHECK(pmf(PriorSpec::geometric(2, 3), 2) == ratio(5, 8));
    CHECK(pmf(PriorSpec::uniform(3, 7), 5) == ratio(1, 5));
    CHECK(pmf(PriorSpec::geometric(3, 6), 3) == ratio(33, 64));
    CHECK(pmf(PriorSpec::uniform(3, 7), 2) == 0);
    CHECK(pmf(PriorSpec::uniform(3, 7), 8) == 0);
    CHECK(pmf(PriorSpec::point(5), 5) == 1);
    CHECK(pmf(PriorSpec::point(5), 4) == 0);
}

TEST_CASE("cdf examples")
{
    CHECK(cdf(PriorSpec::uniform(3, 7), 5) == ratio(3, 5));
    CHECK(cdf(PriorSpec::geometric(3, 6), 3) == ratio(33, 64));
    for (std::int64_t a = 1; a <= 6; ++a)
    {
        for (std::int64_t b = a; b <= a + 20; ++b)
        {
            CHECK(cdf(PriorSpec::geometric(a, b), b) == 1);
            CHECK(cdf(PriorSpec::geometric(a, b), a - 1) == 0);
            CHECK(cdf(PriorSpec::geometric(a, b), b + 5) == 1);
        }
    }
}

TEST_CASE("geometric pmf matches the term-by-term oracle")
{
    for (std::int64_t a = 1; a <= 5; ++a)
    {
        for (std::int64_t b = a; b <= a + 12; ++b)
        {
            for (std::int64_t t = a - 1; t <= b + 1; ++t)
            {
                CHECK(pmf(PriorSpec::geometric(a, b), t) == geometric_oracle(a, b, t));
            }
        }
    }
}

TEST_CASE("normalization, consistency and uniform flatness")
{
    for (std::int64_t a = 1; a <= 10; ++a)
    {
        for (std::int64_t b = a; b <= a + 64; b += (b < a + 8 ? 1 : 7))
        {
            for (const auto& p : {PriorSpec::uniform(a, b), PriorSpec::geometric(a, b)})
            {
                Rational total = 0;
                for (std::int64_t t = a; t <= b; ++t)
                {
                    total += pmf(p, t);
                    CHECK(cdf(p, t) - cdf(p, t - 1) == pmf(p, t));
                    CHECK(cdf(p, t) >= cdf(p, t - 1));
                }
                CHECK(total == 1);
            }
            for (std::int64_t t = a; t <= b; ++t)
            {
                CHECK(pmf(PriorSpec::uniform(a, b), t) == ratio(1, b - a + 1));
            }
        }
    }
}

TEST_CASE("geometric tail mass beyond beta is 2^(alpha-1-beta)")
{
    for (std::int64_t a = 1; a <= 6; ++a)
    {
        for (std::int64_t b = a; b <= a + 30; ++b)
        {
            Rational halving = 0;
            for (std::int64_t t = a; t <= b; ++t)
            {
                halving += pow2(a - t - 1);
            }
            CHECK(Rational(1) - halving == pow2(a - 1 - b));
        }
    }
}

TEST_CASE("sample: degenerate supports")
{
    RngStream rng(1);
    for (int i = 0; i < 200; ++i)
    {
        CHECK(sample(PriorSpec::point(5), rng) == 5);
        CHECK(sample(PriorSpec::uniform(1, 1), rng) == 1);
    }
}

TEST_CASE("sample: uniform[2,4] frequencies within 3 sigma")
{
    RngStream rng(99);
    std::map<std::int64_t, int> counts;
    const int trials = 30000;
    const PriorSampler draw(PriorSpec::uniform(2, 4));
    for (int i = 0; i < trials; ++i)
    {
        counts[draw(rng)]++;
    }
    const double p = 1.0 / 3;
    const double sigma = std::sqrt(p * (1 - p) / trials);
    CHECK(counts.size() == 3);
    for (auto [t, c] : counts)
    {
        CHECK(t >= 2);
        CHECK(t <= 4);
        CHECK(std::abs(c / double(trials) - p) < 3 * sigma);
    }
}

TEST_CASE("sample: geometric frequencies track pmf")
{
    RngStream rng(5);
    const PriorSpec p = PriorSpec::geometric(3, 6);
    std::map<std::int64_t, int> counts;
    const int trials = 30000;
    for (int i = 0; i < trials; ++i)
    {
        counts[sample(p, rng)]++;
    }
    for (std::int64_t t = 3; t <= 6; ++t)
    {
        const double q = to_double(pmf(p, t));
        CHECK(std::abs(counts[t] / double(trials) - q) < 3 * std::sqrt(q * (1 - q) / trials) + 1e-9);
    }
}

TEST_CASE("unbounded priors are markers only")
{
    const auto u = PriorSpec::unbounded(3);
    RngStream rng(1);
    CHECK_FALSE(u.finite());
    CHECK_FALSE(u.size_bound().has_value());
    CHECK_THROWS_AS(pmf(u, 4), UnsupportedQuery);
    CHECK_THROWS_AS(cdf(u, 4), UnsupportedQuery);
    CHECK_THROWS_AS(sample(u, rng), UnsupportedQuery);
    CHECK_FALSE(detect_oversize(1'000'000, u));
}

TEST_CASE("detect_oversize against a finite prior is inclusive at beta")
{
    CHECK(detect_oversize(9, PriorSpec::uniform(3, 8)));
    CHECK_FALSE(detect_oversize(8, PriorSpec::uniform(3, 8)));
    CHECK(PriorSpec::geometric(2, 5).size_bound() == std::optional<std::size_t>(5));
}

TEST_CASE("bad bounds and names are rejected")
{
    CHECK_THROWS(PriorSpec::uniform(5, 4));
    CHECK_THROWS(PriorSpec::uniform(0, 4));
    CHECK_THROWS_AS(prior_kind_from_name("poisson"), SchemaError);
    CHECK(prior_kind_from_name(prior_kind_name(PriorKind::GeometricHalf)) == PriorKind::GeometricHalf);
    CHECK(describe(PriorSpec::uniform(3, 7)) == "uniform[3,7]");
}

TEST_CASE("rationals print as p/q")
{
    CHECK(to_string(ratio(4, 8)) == "1/2");
    CHECK(to_string(Rational(1)) == "1/1");
    CHECK(to_string(ratio(-3, 9)) == "-1/3");
    CHECK(parse_rational("33/64") == ratio(33, 64));
    CHECK(parse_rational(to_string(ratio(47, 180))) == ratio(47, 180));
}
