#pragma once

#include "ras/priors.hpp"
#include "ras/protocols/legality.hpp"
#include "ras/rational.hpp"

#include <functional>
#include <optional>

namespace ras
{
    enum class Strategy : std::uint8_t
    {
        Honest,
        KsForce,
        LeDuplicate,
        AdaptiveDuplication,
        Emulation,
    };

    // Config names: honest, ks-force, le-duplicate, adaptive-duplication, emulation.
    std::string strategy_name(Strategy s);
    Strategy strategy_from_name(const std::string& name);

    struct Scenario
    {
        Problem problem = Problem::KnowledgeSharing;
        PriorSpec prior = PriorSpec::uniform(3, 6);
        std::uint64_t k = 2;
        std::uint64_t colors = 3;
        Strategy strategy = Strategy::Honest;
        std::size_t d = 1;
        std::size_t cheater_index = 0;
        // A fixed network, else a ring of ring_n nodes with fresh inputs,
        // else a ring whose size is drawn from the prior every trial.
        std::optional<NetworkTopology> topology;
        std::optional<std::size_t> ring_n;
        // Emulation demo: size of D, the honest side.
        std::size_t honest_side = 3;
        // Emulation: search for a flipping run; false gives the honest control.
        bool search = true;
    };

    // Utility of the tracked agent in one seeded run, 0 or 1. For honest
    // runs the tracked agent is the one at `cheater_index`.
    int trial_utility(const Scenario& s, std::uint64_t trial_seed);

    struct Estimate
    {
        std::size_t trials = 0;
        std::size_t successes = 0;
        double mean = 0;
        double radius = 0; // 3 * sqrt(p(1-p)/trials)

        bool covers(double value) const { return value >= mean - radius && value <= mean + radius; }
    };

    Estimate make_estimate(std::size_t successes, std::size_t trials);

    // Runs trial(i_seed) for i in [0, trials) across threads. The result
    // depends only on (seed, trials).
    Estimate monte_carlo(std::size_t trials, std::uint64_t seed, const std::function<int(std::uint64_t)>& trial,
                         unsigned threads = 0);

    Estimate empirical_eu(const Scenario& s, std::size_t trials, std::uint64_t seed, unsigned threads = 0);

    // Exact expected utility when the analysis covers the scenario.
    std::optional<Rational> exact_eu(const Scenario& s);
}
