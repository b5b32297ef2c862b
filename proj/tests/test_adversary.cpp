#include "ras/adversary/adaptive.hpp"
#include "ras/adversary/duplication.hpp"
#include "ras/adversary/emulation.hpp"
#include "ras/adversary/ks_sybil.hpp"
#include "ras/error.hpp"

#include <doctest.h>

#include <cmath>

using namespace ras;

namespace
{
    RingOptions domain(std::uint64_t k)
    {
        RingOptions o;
        o.input_domain = k;
        o.preference_domain = k;
        return o;
    }

    void check_single_output(const NetworkTopology& t, const CheaterVerdict& v)
    {
        CHECK(v.trace.outputs.size() == t.size());
        if (v.detected)
        {
            CHECK(v.cheater_utility == 0);
            CHECK(v.trace.legality == Legality::Erroneous);
        }
    }

    double sigma3(double p, int trials) { return 3 * std::sqrt(p * (1 - p) / trials); }
}

TEST_CASE("apply_duplication on rings")
{
    const auto t = build_ring(5, 1);
    const AgentId c = t.nodes()[0].id;
    const auto ex = apply_duplication(t, {c, 3, DuplicationMode::Fixed}, 9);
    CHECK(ex.graph.size() == 7);
    CHECK(ex.graph.is_ring());
    CHECK(ex.virtual_nodes.size() == 3);
    CHECK(ex.virtual_nodes.front() == c);
    // The segment is a path whose ends face the cheater's old neighbors.
    for (std::size_t i = 1; i < ex.virtual_nodes.size(); ++i)
    {
        CHECK(ex.graph.adjacent(ex.virtual_nodes[i - 1], ex.virtual_nodes[i]));
    }
    const auto& nb = t.neighbors(c);
    CHECK(ex.graph.adjacent(ex.virtual_nodes.front(), nb[0]) != ex.graph.adjacent(ex.virtual_nodes.back(), nb[0]));

    const auto same = apply_duplication(t, {c, 1, DuplicationMode::Fixed}, 9);
    CHECK(same.graph.edges() == t.edges());
    CHECK(same.virtual_nodes == std::vector<AgentId>{c});
    CHECK_THROWS_AS(apply_duplication(t, {c, 0, DuplicationMode::Fixed}, 9), InvalidScheme);
    CHECK_THROWS_AS(apply_duplication(t, {12345, 2, DuplicationMode::Fixed}, 9), InvalidScheme);
}

TEST_CASE("apply_duplication keeps general graphs 2-connected")
{
    for (std::uint64_t s = 0; s < 25; ++s)
    {
        const auto g = random_two_connected(5 + s % 6, 0.4, s);
        for (std::size_t d : {2u, 3u, 5u})
        {
            const AgentId c = g.nodes()[s % g.size()].id;
            const auto ex = apply_duplication(g, {c, d, DuplicationMode::Fixed}, s);
            CHECK(ex.graph.size() == g.size() + d - 1);
            CHECK(verify_two_connected(ex.graph));
            // Every honest edge survives; cheater edges move to a frontier.
            for (const auto& [a, b] : g.edges())
            {
                if (a != c && b != c)
                {
                    CHECK(ex.graph.adjacent(a, b));
                }
            }
            for (AgentId nb : g.neighbors(c))
            {
                const bool first = ex.graph.adjacent(ex.virtual_nodes.front(), nb);
                const bool last = ex.graph.adjacent(ex.virtual_nodes.back(), nb);
                CHECK((first || last));
            }
        }
    }
}

TEST_CASE("detect_oversize examples")
{
    CHECK(detect_oversize(9, PriorSpec::uniform(2, 8)));
    CHECK_FALSE(detect_oversize(8, PriorSpec::uniform(2, 8)));
    CHECK_FALSE(detect_oversize(100000, PriorSpec::unbounded()));
}

TEST_CASE("ks-force: d > n under an unbounded prior always wins")
{
    for (int s = 0; s < 40; ++s)
    {
        const auto t = build_ring(3, 40 + s, domain(4));
        const auto r = run_ks_sybil(t, t.nodes()[0].id, 2, 5, 4, PriorSpec::unbounded(), s);
        CHECK(r.forced);
        CHECK_FALSE(r.verdict.detected);
        CHECK(r.verdict.cheater_utility == 1);
        CHECK(r.verdict.trace.legality == Legality::Legal);
        check_single_output(t, r.verdict);
    }
}

TEST_CASE("ks-force: d <= n degenerates to honest play")
{
    const int trials = 1500;
    int wins = 0;
    for (int s = 0; s < trials; ++s)
    {
        const auto t = build_ring(5, 900 + s, domain(2));
        const auto r = run_ks_sybil(t, t.nodes()[0].id, 1, 4, 2, PriorSpec::uniform(3, 10), s);
        CHECK_FALSE(r.forced);
        CHECK(r.verdict.trace.legality == Legality::Legal);
        wins += r.verdict.cheater_utility;
    }
    CHECK(std::abs(wins / double(trials) - 0.5) < sigma3(0.5, trials));
}

TEST_CASE("ks-force: detection boundary")
{
    const PriorSpec prior = PriorSpec::uniform(3, 7);
    const auto small = build_ring(3, 1, domain(2));
    const auto r3 = run_ks_sybil(small, small.nodes()[0].id, 1, 5, 2, prior, 1);
    CHECK(r3.verdict.n_prime == 7);
    CHECK_FALSE(r3.verdict.detected);
    CHECK(r3.verdict.cheater_utility == 1);
    const auto big = build_ring(4, 1, domain(2));
    const auto r4 = run_ks_sybil(big, big.nodes()[0].id, 1, 5, 2, prior, 1);
    CHECK(r4.verdict.n_prime == 8);
    CHECK(r4.verdict.detected);
    CHECK(r4.verdict.cheater_utility == 0);
    check_single_output(big, r4.verdict);
}

TEST_CASE("le-duplicate: d=2 wins about 2/(n+1) when undetected")
{
    const PriorSpec prior = PriorSpec::uniform(3, 4);
    const int trials = 4000;
    int wins = 0;
    for (int s = 0; s < trials; ++s)
    {
        const auto t = build_ring(3, 300 + s);
        const auto v = run_le_sybil(t, t.nodes()[0].id, 2, prior, s);
        CHECK_FALSE(v.detected);
        check_single_output(t, v);
        wins += v.cheater_utility;
    }
    CHECK(std::abs(wins / double(trials) - 0.5) < sigma3(0.5, trials));

    const auto four = build_ring(4, 2);
    const auto v = run_le_sybil(four, four.nodes()[0].id, 2, prior, 1);
    CHECK(v.detected);
    CHECK(v.cheater_utility == 0);
    for (std::size_t n = 3; n <= 4; ++n)
    {
        const auto t = build_ring(n, 5);
        CHECK(run_le_sybil(t, t.nodes()[0].id, 3, PriorSpec::uniform(3, 4), 2).detected);
    }
}

TEST_CASE("adaptive duplication grows to at least n")
{
    for (std::size_t n : {3u, 4u, 5u, 6u, 7u})
    {
        for (std::uint64_t s = 0; s < 5; ++s)
        {
            const auto t = build_ring(n, 60 * n + s);
            const auto r = run_adaptive_duplication(t, t.nodes()[s % n].id, s);
            CHECK(r.n == n);
            CHECK(r.d >= n);
            CHECK(r.d == 2 * r.commit_round);
            CHECK(r.consistent);
            CHECK(r.verdict.n_prime == n + r.d - 1);
            check_single_output(t, r.verdict);
        }
    }
}

TEST_CASE("adaptive duplication stopped one round early stays below n")
{
    const auto t = build_ring(4, 3);
    const AgentId c = t.nodes()[0].id;
    const auto full = run_adaptive_duplication(t, c, 1);
    const auto early = run_adaptive_duplication(t, c, 1, full.commit_round - 1);
    CHECK(early.d < 4);
    CHECK(early.consistent);
}

TEST_CASE("emulation: searched runs beat the honest control")
{
    const int trials = 300;
    int attack = 0;
    int control = 0;
    std::size_t flips = 0;
    for (int s = 0; s < trials; ++s)
    {
        const auto t = emulation_topology(3, 2, s);
        CHECK(t.size() == 4);
        CHECK(verify_two_connected(t));
        const AgentId hub = t.nodes().front().id;
        const auto pref = t.node(hub).preference % 2;
        const auto a = run_emulation_attack(t, hub, pref, 3, 2, PriorSpec::unbounded(), s, true);
        const auto c = run_emulation_attack(t, hub, pref, 3, 2, PriorSpec::unbounded(), s, false);
        CHECK_FALSE(a.verdict.detected);
        CHECK(a.verdict.trace.legality == Legality::Legal);
        check_single_output(t, a.verdict);
        CHECK_FALSE(c.flipped);
        attack += a.verdict.cheater_utility;
        control += c.verdict.cheater_utility;
        flips += a.flipped;
    }
    CHECK(flips > 0);
    const double pa = attack / double(trials);
    const double pc = control / double(trials);
    CHECK(std::abs(pc - 0.5) < sigma3(0.5, trials));
    CHECK(pa - pc > sigma3(0.5, trials));
}

TEST_CASE("emulation: a finite prior below the emulated size is self-defeating")
{
    const auto t = emulation_topology(3, 2, 1);
    const AgentId hub = t.nodes().front().id;
    const auto r = run_emulation_attack(t, hub, 1, 3, 2, PriorSpec::uniform(3, 5), 1, true);
    CHECK(r.verdict.n_prime == 6);
    CHECK(r.verdict.detected);
    CHECK(r.verdict.cheater_utility == 0);
}
