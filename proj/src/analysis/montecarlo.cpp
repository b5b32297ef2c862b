#include "ras/analysis/montecarlo.hpp"

#include "ras/adversary/adaptive.hpp"
#include "ras/adversary/emulation.hpp"
#include "ras/adversary/ks_sybil.hpp"
#include "ras/analysis/equilibrium.hpp"
#include "ras/error.hpp"
#include "ras/protocols/registry.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace ras
{
    std::string strategy_name(Strategy s)
    {
        switch (s)
        {
        case Strategy::Honest: return "honest";
        case Strategy::KsForce: return "ks-force";
        case Strategy::LeDuplicate: return "le-duplicate";
        case Strategy::AdaptiveDuplication: return "adaptive-duplication";
        case Strategy::Emulation: return "emulation";
        }
        return "?";
    }

    Strategy strategy_from_name(const std::string& name)
    {
        for (Strategy s : {Strategy::Honest, Strategy::KsForce, Strategy::LeDuplicate, Strategy::AdaptiveDuplication,
                           Strategy::Emulation})
        {
            if (strategy_name(s) == name)
            {
                return s;
            }
        }
        throw SchemaError("unknown strategy: " + name);
    }

    namespace
    {
        NetworkTopology trial_topology(const Scenario& s, RngStream& rng)
        {
            if (s.strategy == Strategy::Emulation)
            {
                return emulation_topology(s.honest_side, s.k, rng.next_u64());
            }
            if (s.topology)
            {
                return *s.topology;
            }
            const auto n = s.ring_n ? *s.ring_n : static_cast<std::size_t>(sample(s.prior, rng));
            RingOptions options;
            options.input_domain = s.problem == Problem::KnowledgeSharing ? s.k : 2;
            options.preference_domain = s.problem == Problem::KnowledgeSharing ? s.k : s.colors;
            return build_ring(n, rng.next_u64(), options);
        }
    }

    int trial_utility(const Scenario& s, std::uint64_t trial_seed)
    {
        RngStream rng(trial_seed);
        const NetworkTopology t = trial_topology(s, rng);
        const std::uint64_t run_seed = rng.next_u64();
        const NodeSpec& tracked = t.nodes()[s.cheater_index % t.size()];

        ProtocolParams params;
        params.k = s.k;
        params.colors = s.colors;
        params.size_bound = s.prior.size_bound();
        const std::uint64_t preference = preferred_output(s.problem, tracked, params);

        switch (s.strategy)
        {
        case Strategy::Honest:
            return utility(tracked.id, run_honest(s.problem, t, params, run_seed), preference);
        case Strategy::KsForce:
            return run_ks_sybil(t, tracked.id, preference, s.d, s.k, s.prior, run_seed).verdict.cheater_utility;
        case Strategy::LeDuplicate:
            return run_le_sybil(t, tracked.id, s.d, s.prior, run_seed).cheater_utility;
        case Strategy::AdaptiveDuplication:
            return run_adaptive_duplication(t, tracked.id, run_seed, std::nullopt, s.problem).verdict.cheater_utility;
        case Strategy::Emulation:
        {
            const AgentId hub = t.nodes().front().id;
            const std::uint64_t pref = t.node(hub).preference % s.k;
            return run_emulation_attack(t, hub, pref, 3, s.k, s.prior, run_seed, s.search).verdict.cheater_utility;
        }
        }
        return 0;
    }

    Estimate make_estimate(std::size_t successes, std::size_t trials)
    {
        Estimate e;
        e.trials = trials;
        e.successes = successes;
        if (trials > 0)
        {
            e.mean = static_cast<double>(successes) / static_cast<double>(trials);
            e.radius = 3.0 * std::sqrt(e.mean * (1.0 - e.mean) / static_cast<double>(trials));
        }
        return e;
    }

    Estimate monte_carlo(std::size_t trials, std::uint64_t seed, const std::function<int(std::uint64_t)>& trial,
                         unsigned threads)
    {
        if (trials == 0)
        {
            throw UnsupportedQuery("trials must be at least 1");
        }
        if (threads == 0)
        {
            threads = std::max(1u, std::thread::hardware_concurrency());
        }
        threads = static_cast<unsigned>(std::min<std::size_t>(threads, trials));
        const RngStream root(seed);
        std::atomic<std::size_t> next{0};
        std::atomic<std::size_t> wins{0};
        auto worker = [&] {
            std::size_t local = 0;
            for (std::size_t i = next++; i < trials; i = next++)
            {
                local += trial(root.substream(i).next_u64()) != 0;
            }
            wins += local;
        };
        if (threads == 1)
        {
            worker();
        }
        else
        {
            std::vector<std::jthread> pool;
            for (unsigned i = 0; i < threads; ++i)
            {
                pool.emplace_back(worker);
            }
        }
        return make_estimate(wins.load(), trials);
    }

    Estimate empirical_eu(const Scenario& s, std::size_t trials, std::uint64_t seed, unsigned threads)
    {
        return monte_carlo(trials, seed, [&s](std::uint64_t ts) { return trial_utility(s, ts); }, threads);
    }

    std::optional<Rational> exact_eu(const Scenario& s)
    {
        const Rational one_in_k = Rational(1) / Rational(BigInt(s.k));
        if (s.strategy == Strategy::Emulation || s.strategy == Strategy::AdaptiveDuplication)
        {
            return std::nullopt;
        }
        if (s.topology || s.ring_n)
        {
            const auto n = static_cast<std::int64_t>(s.topology ? s.topology->size() : *s.ring_n);
            if (s.problem == Problem::KnowledgeSharing && s.strategy != Strategy::LeDuplicate)
            {
                const std::size_t d = s.strategy == Strategy::KsForce ? s.d : 1;
                const auto n_prime = static_cast<std::size_t>(n) + d - 1;
                if (detect_oversize(n_prime, s.prior))
                {
                    return Rational(0);
                }
                if (static_cast<std::int64_t>(d) > n)
                {
                    return Rational(1);
                }
                // Only fresh inputs make the sum uniform.
                return s.topology ? std::nullopt : std::optional(one_in_k);
            }
            if (s.problem == Problem::LeaderElection)
            {
                const std::size_t d = s.strategy == Strategy::LeDuplicate ? s.d : 1;
                if (detect_oversize(static_cast<std::size_t>(n) + d - 1, s.prior))
                {
                    return Rational(0);
                }
                return Rational(static_cast<std::int64_t>(d), n + static_cast<std::int64_t>(d) - 1);
            }
            return std::nullopt;
        }
        if (!s.prior.finite())
        {
            return std::nullopt;
        }
        switch (s.strategy)
        {
        case Strategy::Honest:
            if (s.problem == Problem::KnowledgeSharing)
            {
                return one_in_k;
            }
            if (s.problem == Problem::LeaderElection)
            {
                return le_honest_eu(s.prior);
            }
            return std::nullopt;
        case Strategy::KsForce:
            return s.problem == Problem::KnowledgeSharing ? std::optional(ks_cheater_eu_for_d(s.prior, s.k, s.d))
                                                          : std::nullopt;
        case Strategy::LeDuplicate:
            return s.problem == Problem::LeaderElection ? std::optional(le_cheater_eu(s.prior, s.d)) : std::nullopt;
        default:
            return std::nullopt;
        }
    }
}
