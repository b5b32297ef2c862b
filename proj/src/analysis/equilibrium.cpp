#include "ras/analysis/equilibrium.hpp"

#include "ras/error.hpp"

namespace ras
{
    std::string verdict_name(Verdict v)
    {
        return v == Verdict::Equilibrium ? "Equilibrium" : "IncentiveToCheat";
    }

    namespace
    {
        void require_finite(const PriorSpec& prior, const char* what)
        {
            if (!prior.finite())
            {
                throw UnsupportedQuery(std::string(what) + " needs a finite prior");
            }
        }

        void require_k(std::uint64_t k)
        {
            if (k < 2)
            {
                throw UnsupportedQuery("k must be at least 2");
            }
        }
    }

    Rational ks_cheater_eu_for_d(const PriorSpec& prior, std::uint64_t k, std::size_t d)
    {
        require_finite(prior, "ks_cheater_eu");
        require_k(k);
        if (d == 0)
        {
            throw InvalidScheme("d must be positive");
        }
        const auto dd = static_cast<std::int64_t>(d);
        Rational forced = 0;
        Rational lucky = 0;
        for (std::int64_t n = prior.alpha; n <= prior.beta; ++n)
        {
            if (n + dd - 1 > prior.beta)
            {
                break;
            }
            (dd > n ? forced : lucky) += pmf(prior, n);
        }
        return forced + lucky / Rational(BigInt(k));
    }

    Rational ks_cheater_eu(const PriorSpec& prior, std::uint64_t k)
    {
        require_finite(prior, "ks_cheater_eu");
        return ks_cheater_eu_for_d(prior, k, static_cast<std::size_t>(prior.beta / 2 + 1));
    }

    BestDuplication best_duplication(const PriorSpec& prior, std::uint64_t k)
    {
        require_finite(prior, "best_duplication");
        BestDuplication best{1, ks_cheater_eu_for_d(prior, k, 1)};
        for (std::size_t d = 2; d <= static_cast<std::size_t>(prior.beta) + 1; ++d)
        {
            Rational eu = ks_cheater_eu_for_d(prior, k, d);
            if (eu > best.eu)
            {
                best = {d, std::move(eu)};
            }
        }
        return best;
    }

    EquilibriumReport ks_equilibrium(const PriorSpec& prior, std::uint64_t k)
    {
        require_finite(prior, "ks_equilibrium");
        EquilibriumReport r;
        r.prior = prior;
        r.k = k;
        r.honest_eu = Rational(1) / Rational(BigInt(k));
        r.best_deviation_eu = ks_cheater_eu(prior, k);
        r.best_d = static_cast<std::size_t>(prior.beta / 2 + 1);
        r.verdict = compare_eu(r.honest_eu, r.best_deviation_eu);

        const std::int64_t a = prior.alpha;
        const std::int64_t b = prior.beta;
        const auto kk = static_cast<std::int64_t>(k);
        switch (prior.kind)
        {
        case PriorKind::Uniform:
            if (k == 2)
            {
                r.closed_form = Verdict::Equilibrium;
            }
            else
            {
                // beta <= bound / (k-2), kept in integers.
                const std::int64_t bound = b % 2 == 0 ? (2 * a - 2) * (kk - 1) : 2 * a * (kk - 1) - kk;
                r.closed_form = b * (kk - 2) <= bound ? Verdict::Equilibrium : Verdict::IncentiveToCheat;
            }
            break;
        case PriorKind::GeometricHalf:
            r.closed_form = b <= 2 * a - 1 ? Verdict::Equilibrium : Verdict::IncentiveToCheat;
            break;
        case PriorKind::Point:
            r.closed_form = Verdict::Equilibrium;
            break;
        case PriorKind::Unbounded:
            break;
        }
        r.divergence = r.closed_form && *r.closed_form != r.verdict;
        return r;
    }

    EquilibriumReport ks_equilibrium_any_k(const PriorSpec& prior)
    {
        require_finite(prior, "ks_equilibrium");
        // Only the d > n term survives k -> infinity, so the cheater gains
        // for some k exactly when that mass is positive.
        const auto d = static_cast<std::size_t>(prior.beta / 2 + 1);
        EquilibriumReport r;
        r.prior = prior;
        r.honest_eu = 0;
        r.best_d = d;
        r.best_deviation_eu = 0;
        for (std::int64_t n = prior.alpha; n < static_cast<std::int64_t>(d) && n + static_cast<std::int64_t>(d) - 1 <= prior.beta; ++n)
        {
            r.best_deviation_eu += pmf(prior, n);
        }
        r.verdict = compare_eu(r.honest_eu, r.best_deviation_eu);
        r.closed_form = prior.beta <= 2 * prior.alpha - 1 ? Verdict::Equilibrium : Verdict::IncentiveToCheat;
        r.divergence = *r.closed_form != r.verdict;
        return r;
    }

    Rational le_honest_eu(const PriorSpec& prior)
    {
        require_finite(prior, "le_honest_eu");
        Rational eu = 0;
        for (std::int64_t n = prior.alpha; n <= prior.beta; ++n)
        {
            eu += pmf(prior, n) / Rational(n);
        }
        return eu;
    }

    Rational le_cheater_eu(const PriorSpec& prior, std::size_t d)
    {
        require_finite(prior, "le_cheater_eu");
        if (d == 0)
        {
            throw InvalidScheme("d must be positive");
        }
        const auto dd = static_cast<std::int64_t>(d);
        Rational eu = 0;
        for (std::int64_t n = prior.alpha; n + dd - 1 <= prior.beta; ++n)
        {
            eu += pmf(prior, n) * Rational(dd, n + dd - 1);
        }
        return eu;
    }

    EquilibriumReport le_equilibrium(const PriorSpec& prior)
    {
        require_finite(prior, "le_equilibrium");
        EquilibriumReport r;
        r.problem = Problem::LeaderElection;
        r.prior = prior;
        r.honest_eu = le_honest_eu(prior);
        r.best_deviation_eu = r.honest_eu;
        r.best_d = 1;
        bool first = true;
        for (std::size_t d = 2; d <= static_cast<std::size_t>(prior.beta - prior.alpha + 1); ++d)
        {
            Rational eu = le_cheater_eu(prior, d);
            if (first || eu > r.best_deviation_eu)
            {
                r.best_deviation_eu = std::move(eu);
                r.best_d = d;
                first = false;
            }
        }
        r.verdict = compare_eu(r.honest_eu, r.best_deviation_eu);
        switch (prior.kind)
        {
        case PriorKind::Uniform:
            r.closed_form = prior.beta <= prior.alpha + 1 ? Verdict::Equilibrium : Verdict::IncentiveToCheat;
            break;
        case PriorKind::GeometricHalf:
            r.closed_form = prior.beta == prior.alpha ? Verdict::Equilibrium : Verdict::IncentiveToCheat;
            break;
        case PriorKind::Point:
            r.closed_form = Verdict::Equilibrium;
            break;
        case PriorKind::Unbounded:
            break;
        }
        r.divergence = r.closed_form && *r.closed_form != r.verdict;
        return r;
    }

    Rational ring_coloring_collision(std::uint64_t colors)
    {
        if (colors < 3)
        {
            throw UnsupportedQuery("the coloring bound needs at least 3 colors");
        }
        const Rational miss(BigInt(colors - 1), BigInt(colors));
        return Rational(1) - miss * miss;
    }

    Rational ring_coloring_honest_eu_bound(std::uint64_t colors, std::int64_t n)
    {
        if (n < 1)
        {
            throw UnsupportedQuery("n must be positive");
        }
        const Rational pa = ring_coloring_collision(colors);
        return Rational(1) - pa / 2 - pa * Rational(1, n) / 2;
    }

    Rational ring_coloring_honest_eu_bound(std::uint64_t colors, const PriorSpec& prior)
    {
        return ring_coloring_honest_eu_bound(colors, prior.alpha);
    }
}
