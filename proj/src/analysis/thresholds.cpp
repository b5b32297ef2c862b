#include "ras/analysis/thresholds.hpp"

#include "ras/analysis/equilibrium.hpp"
#include "ras/error.hpp"

#include <functional>

namespace ras
{
    namespace
    {
        // Highest beta in [alpha, cap] of the given parity with an
        // Equilibrium verdict; empty if the cap itself still is one.
        std::optional<std::int64_t> sweep(std::int64_t alpha, std::int64_t cap, int parity,
                                          const std::function<bool(std::int64_t)>& equilibrium)
        {
            std::optional<std::int64_t> best;
            std::int64_t last = alpha;
            for (std::int64_t b = alpha; b <= cap; ++b)
            {
                if (parity >= 0 && b % 2 != parity)
                {
                    continue;
                }
                last = b;
                if (equilibrium(b))
                {
                    best = b;
                }
            }
            if (best && *best == last)
            {
                return std::nullopt;
            }
            return best ? best : std::optional<std::int64_t>(alpha - 1);
        }

        // Largest beta of the parity with beta * den <= num.
        std::int64_t largest_with_parity(std::int64_t num, std::int64_t den, int parity)
        {
            std::int64_t b = num / den;
            if (b % 2 != parity)
            {
                --b;
            }
            return b;
        }

        ThresholdRow row(std::string family, std::optional<std::uint64_t> k, std::int64_t alpha, std::string parity,
                         std::optional<std::int64_t> exact, std::optional<std::int64_t> closed)
        {
            ThresholdRow r{std::move(family), k, alpha, std::move(parity), exact, closed, false};
            r.match = exact == closed;
            return r;
        }
    }

    std::vector<ThresholdRow> thresholds_report(const ThresholdRanges& r)
    {
        if (r.alpha_min < 1 || r.alpha_max < r.alpha_min || r.k_min < 2 || r.k_max < r.k_min)
        {
            throw UnsupportedQuery("empty threshold ranges");
        }
        std::vector<ThresholdRow> rows;
        for (std::int64_t a = r.alpha_min; a <= r.alpha_max; ++a)
        {
            // Uniform k = 3 has the widest Equilibrium band, about 4 alpha.
            const std::int64_t cap = 6 * a + 16;
            for (std::uint64_t k = r.k_min; k <= r.k_max; ++k)
            {
                auto ks_uniform = [&](std::int64_t b) {
                    return ks_equilibrium(PriorSpec::uniform(a, b), k).verdict == Verdict::Equilibrium;
                };
                if (k == 2)
                {
                    rows.push_back(row("ks-uniform", k, a, "all", sweep(a, cap, -1, ks_uniform), std::nullopt));
                }
                else
                {
                    const auto kk = static_cast<std::int64_t>(k);
                    const std::int64_t even = largest_with_parity((2 * a - 2) * (kk - 1), kk - 2, 0);
                    const std::int64_t odd = largest_with_parity(2 * a * (kk - 1) - kk, kk - 2, 1);
                    rows.push_back(row("ks-uniform", k, a, "all", sweep(a, cap, -1, ks_uniform), std::max(even, odd)));
                    rows.push_back(row("ks-uniform", k, a, "even", sweep(a, cap, 0, ks_uniform), even));
                    rows.push_back(row("ks-uniform", k, a, "odd", sweep(a, cap, 1, ks_uniform), odd));
                }
                auto ks_geometric = [&](std::int64_t b) {
                    return ks_equilibrium(PriorSpec::geometric(a, b), k).verdict == Verdict::Equilibrium;
                };
                rows.push_back(row("ks-geometric", k, a, "all", sweep(a, cap, -1, ks_geometric), 2 * a - 1));
            }
            auto any_k = [&](std::int64_t b) {
                return ks_equilibrium_any_k(PriorSpec::uniform(a, b)).verdict == Verdict::Equilibrium;
            };
            rows.push_back(row("ks-any-k", std::nullopt, a, "all", sweep(a, cap, -1, any_k), 2 * a - 1));

            const std::int64_t le_cap = a + 12;
            auto le_uniform = [&](std::int64_t b) {
                return le_equilibrium(PriorSpec::uniform(a, b)).verdict == Verdict::Equilibrium;
            };
            auto le_geometric = [&](std::int64_t b) {
                return le_equilibrium(PriorSpec::geometric(a, b)).verdict == Verdict::Equilibrium;
            };
            rows.push_back(row("le-uniform", std::nullopt, a, "all", sweep(a, le_cap, -1, le_uniform), a + 1));
            rows.push_back(row("le-geometric", std::nullopt, a, "all", sweep(a, le_cap, -1, le_geometric), a));
        }
        return rows;
    }

    std::string format_bound(const std::optional<std::int64_t>& b)
    {
        return b ? std::to_string(*b) : "inf";
    }
}
