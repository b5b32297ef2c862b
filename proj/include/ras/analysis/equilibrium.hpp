#pragma once

#include "ras/priors.hpp"
#include "ras/protocols/legality.hpp"
#include "ras/rational.hpp"

#include <optional>

namespace ras
{
    enum class Verdict : std::uint8_t
    {
        Equilibrium,
        IncentiveToCheat,
    };

    std::string verdict_name(Verdict v);

    // Ties go to Equilibrium: a deviation has to be strictly better.
    inline Verdict compare_eu(const Rational& honest, const Rational& deviation)
    {
        return deviation <= honest ? Verdict::Equilibrium : Verdict::IncentiveToCheat;
    }

    struct EquilibriumReport
    {
        Problem problem = Problem::KnowledgeSharing;
        PriorSpec prior;
        std::optional<std::uint64_t> k; // empty for AnyK and for non-KS problems
        Rational honest_eu;
        Rational best_deviation_eu;
        std::size_t best_d = 1;
        Verdict verdict = Verdict::Equilibrium;
        // Verdict of the closed-form threshold, when one applies.
        std::optional<Verdict> closed_form;
        bool divergence = false; // closed form disagrees with the exact comparison
    };

    // Ring Knowledge Sharing, cheater duplicating into d nodes:
    // P[d > n, undetected] + P[d <= n, undetected] / k.
    Rational ks_cheater_eu_for_d(const PriorSpec& prior, std::uint64_t k, std::size_t d);
    // At d = floor(beta/2) + 1.
    Rational ks_cheater_eu(const PriorSpec& prior, std::uint64_t k);

    struct BestDuplication
    {
        std::size_t d = 1;
        Rational eu;
    };
    // Smallest maximizer over d in 1..beta+1.
    BestDuplication best_duplication(const PriorSpec& prior, std::uint64_t k);

    EquilibriumReport ks_equilibrium(const PriorSpec& prior, std::uint64_t k);
    // Equilibrium for every k.
    EquilibriumReport ks_equilibrium_any_k(const PriorSpec& prior);

    Rational le_honest_eu(const PriorSpec& prior);
    // Enumerated: sum of pmf(n) * d/(n+d-1) over undetected n.
    Rational le_cheater_eu(const PriorSpec& prior, std::size_t d = 2);
    // Maximizes over d in 2..beta-alpha+1.
    EquilibriumReport le_equilibrium(const PriorSpec& prior);

    // 1 - P[A]/2 - P[A] P[s] / 2 with P[A] = 1 - ((c-1)/c)^2, P[s] = 1/n, P[u|A] = 1.
    Rational ring_coloring_collision(std::uint64_t colors);
    Rational ring_coloring_honest_eu_bound(std::uint64_t colors, std::int64_t n);
    // Worst case over the support, i.e. the smallest n.
    Rational ring_coloring_honest_eu_bound(std::uint64_t colors, const PriorSpec& prior);
}
