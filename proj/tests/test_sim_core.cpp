#include "ras/adversary/duplication.hpp"
#include "ras/error.hpp"
#include "ras/protocols/registry.hpp"
#include "ras/wakeup.hpp"

#include <doctest.h>

#include <map>
#include <memory>
#include <queue>

using namespace ras;

namespace
{
    NetworkTopology make_graph(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges)
    {
        std::vector<NodeSpec> nodes;
        for (std::size_t i = 0; i < n; ++i)
        {
            nodes.push_back({100 + i, 0, 0});
        }
        std::vector<Edge> es;
        for (auto [a, b] : edges)
        {
            es.push_back(make_edge(100 + a, 100 + b));
        }
        return NetworkTopology(std::move(nodes), es);
    }

    // Remove each node in turn, BFS over the adjacency matrix.
    bool brute_two_connected(std::size_t n, const std::vector<std::vector<bool>>& adj)
    {
        if (n < 3)
        {
            return false;
        }
        for (std::size_t cut = 0; cut <= n; ++cut)
        {
            std::vector<bool> seen(n, false);
            const std::size_t start = cut == 0 ? 1 : 0;
            seen[start] = true;
            std::queue<std::size_t> q;
            q.push(start);
            std::size_t count = 1;
            while (!q.empty())
            {
                const std::size_t u = q.front();
                q.pop();
                for (std::size_t v = 0; v < n; ++v)
                {
                    if (v != cut && adj[u][v] && !seen[v])
                    {
                        seen[v] = true;
                        ++count;
                        q.push(v);
                    }
                }
            }
            if (count != (cut < n ? n - 1 : n))
            {
                return false;
            }
        }
        return true;
    }

    struct ScriptedAgent : Agent
    {
        std::function<void(AgentIo&)> fn;
        explicit ScriptedAgent(std::function<void(AgentIo&)> f) : fn(std::move(f)) {}
        void on_round(AgentIo& io) override { fn(io); }
    };

    AgentSlot scripted(AgentId id, std::function<void(AgentIo&)> fn)
    {
        AgentSlot s;
        s.agent = id;
        s.nodes = {id};
        s.behavior = std::make_unique<ScriptedAgent>(std::move(fn));
        return s;
    }

    // Wake-Up only; records the view and stops.
    struct WakeProbe : NodeLogic
    {
        RingWakeUp wake;
        std::map<AgentId, RingView>* views;
        WakeProbe(AgentId self, std::vector<AgentId> nbrs, std::map<AgentId, RingView>* v, bool tamper = false)
            : NodeLogic(self, nbrs, RngStream(self)), wake(self, nbrs[0], nbrs[1]), views(v), tamper_(tamper)
        {
        }
        void on_step(NodeIo& io) override
        {
            std::vector<Message> raw;
            std::vector<Message>* real = io.out;
            io.out = &raw;
            const PhaseStatus s = wake.step(io);
            io.out = real;
            for (auto& m : raw)
            {
                if (tamper_ && m.payload.tag == Tag::IdEcho && m.payload.vec.size() > 2)
                {
                    std::swap(m.payload.vec[1], m.payload.vec[2]);
                }
                real->push_back(std::move(m));
            }
            if (s == PhaseStatus::Failed)
            {
                fail(io);
            }
            else if (s == PhaseStatus::Done)
            {
                (*views)[id()] = wake.view();
                finish(Output::scalar(wake.view().n_prime()));
            }
        }
        bool tamper_;
    };

    ExecutionTrace run_probes(const NetworkTopology& g, std::map<AgentId, RingView>& views,
                              std::optional<AgentId> liar = std::nullopt)
    {
        std::vector<AgentSlot> slots;
        for (const auto& n : g.nodes())
        {
            slots.push_back(honest_slot(std::make_unique<WakeProbe>(n.id, g.neighbors(n.id), &views, liar == n.id)));
        }
        return run_sync(g, std::move(slots), RunOptions{1, 200, false});
    }
}

TEST_CASE("build_ring: shape, determinism, precondition")
{
    const auto t = build_ring(5, 42);
    CHECK(t.size() == 5);
    CHECK(t.edges().size() == 5);
    for (const auto& n : t.nodes())
    {
        CHECK(t.degree(n.id) == 2);
    }
    CHECK(t.is_ring());

    const auto a = build_ring(3, 7);
    const auto b = build_ring(3, 7);
    CHECK(a.edges() == b.edges());
    for (std::size_t i = 0; i < 3; ++i)
    {
        CHECK(a.nodes()[i].id == b.nodes()[i].id);
        CHECK(a.nodes()[i].input == b.nodes()[i].input);
        CHECK(a.nodes()[i].preference == b.nodes()[i].preference);
    }
    CHECK_THROWS_AS(build_ring(2, 1), InvalidTopology);
}

TEST_CASE("build_ring: inputs and preferences stay in their domains")
{
    RingOptions o;
    o.input_domain = 7;
    o.preference_domain = 3;
    const auto t = build_ring(40, 9, o);
    for (const auto& n : t.nodes())
    {
        CHECK(n.input < 7);
        CHECK(n.preference < 3);
    }
}

TEST_CASE("verify_two_connected examples")
{
    CHECK(verify_two_connected(build_ring(6, 3)));
    CHECK_FALSE(verify_two_connected(make_graph(4, {{0, 1}, {1, 2}, {2, 3}})));
    // Two triangles sharing node 0.
    CHECK_FALSE(verify_two_connected(make_graph(5, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}})));
}

TEST_CASE("verify_two_connected agrees with node-removal oracle on small graphs")
{
    RngStream rng(2024);
    for (int trial = 0; trial < 600; ++trial)
    {
        const std::size_t n = 3 + rng.uniform(0, 5);
        std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        for (std::size_t i = 0; i < n; ++i)
        {
            for (std::size_t j = i + 1; j < n; ++j)
            {
                if (rng.uniform(0, 99) < 45)
                {
                    adj[i][j] = adj[j][i] = true;
                    edges.emplace_back(i, j);
                }
            }
        }
        CHECK(verify_two_connected(make_graph(n, edges)) == brute_two_connected(n, adj));
    }
}

TEST_CASE("random_two_connected produces 2-connected graphs")
{
    for (std::uint64_t s = 0; s < 30; ++s)
    {
        const auto g = random_two_connected(3 + s % 10, 0.3, s);
        CHECK(g.size() == 3 + s % 10);
        CHECK(verify_two_connected(g));
    }
}

TEST_CASE("fresh_ids avoids taken ids and is deterministic")
{
    const std::set<AgentId> taken{1, 2, 3};
    const auto a = fresh_ids(10, 5, taken);
    CHECK(a == fresh_ids(10, 5, taken));
    std::set<AgentId> all(a.begin(), a.end());
    CHECK(all.size() == 10);
    for (AgentId id : a)
    {
        CHECK(taken.count(id) == 0);
    }
}

TEST_CASE("rng: substreams are functions of (seed, key)")
{
    RngStream a = node_stream(11, 5);
    RngStream b = node_stream(11, 5);
    RngStream c = node_stream(11, 6);
    RngStream d = node_stream(12, 5);
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    CHECK(x != c.next_u64());
    CHECK(x != d.next_u64());
    RngStream u(3);
    for (int i = 0; i < 1000; ++i)
    {
        const auto v = u.uniform(4, 9);
        CHECK(v >= 4);
        CHECK(v <= 9);
    }
}

TEST_CASE("run_sync: honest ring KS finishes within 2n'+O(1) rounds")
{
    const auto t = build_ring(5, 1);
    const auto trace = ks_ring(t, 2, 3);
    CHECK(trace.outputs.size() == 5);
    CHECK(trace.rounds_executed <= 2 * 5 + 6);
    CHECK(trace.legality == Legality::Legal);
}

TEST_CASE("run_sync: sending on a non-edge is a harness fault")
{
    const auto t = build_ring(4, 1);
    const auto order = ring_order(t);
    std::vector<AgentSlot> slots;
    for (AgentId id : order)
    {
        slots.push_back(scripted(id, [id, &order](AgentIo& io) {
            if (id == order[0])
            {
                io.send(id, order[2], make_payload(Tag::Abort));
            }
            io.decide(Output::scalar(0));
        }));
    }
    CHECK_THROWS_AS(run_sync(t, std::move(slots), RunOptions{}), HarnessFault);
}

TEST_CASE("run_sync: deciding twice is a harness fault")
{
    const auto t = build_ring(3, 1);
    std::vector<AgentSlot> slots;
    for (const auto& n : t.nodes())
    {
        slots.push_back(scripted(n.id, [](AgentIo& io) {
            io.decide(Output::scalar(0));
            io.decide(Output::scalar(1));
        }));
    }
    CHECK_THROWS_AS(run_sync(t, std::move(slots), RunOptions{}), HarnessFault);
}

TEST_CASE("run_sync: sending for a node the agent does not own is a harness fault")
{
    const auto t = build_ring(3, 1);
    const auto ids = ring_order(t);
    std::vector<AgentSlot> slots;
    for (AgentId id : ids)
    {
        slots.push_back(scripted(id, [id, &ids](AgentIo& io) {
            io.send(ids[1], ids[2], make_payload(Tag::Abort));
            io.decide(Output::scalar(id));
        }));
    }
    CHECK_THROWS_AS(run_sync(t, std::move(slots), RunOptions{}), HarnessFault);
}

TEST_CASE("run_sync: a silent agent exhausts the round budget")
{
    const auto t = build_ring(3, 1);
    std::vector<AgentSlot> slots;
    bool first = true;
    for (const auto& n : t.nodes())
    {
        const bool silent = first;
        first = false;
        slots.push_back(scripted(n.id, [silent](AgentIo& io) {
            if (!silent && !io.decided())
            {
                io.decide(Output::scalar(0));
            }
        }));
    }
    CHECK_THROWS_AS(run_sync(t, std::move(slots), RunOptions{0, 50, false}), RunawayProtocol);
}

TEST_CASE("run_sync: messages are readable only in the next round, in (from, to) order")
{
    const auto t = build_ring(3, 1);
    const auto ids = ring_order(t);
    std::map<AgentId, std::vector<std::pair<Round, AgentId>>> seen;
    std::vector<AgentSlot> slots;
    for (AgentId id : ids)
    {
        slots.push_back(scripted(id, [id, &t, &seen](AgentIo& io) {
            for (const auto& m : io.inbox(id))
            {
                CHECK(m.round + 1 == io.round());
                seen[id].emplace_back(io.round(), m.from);
            }
            if (io.round() == 0)
            {
                for (AgentId nb : t.neighbors(id))
                {
                    io.send(id, nb, make_payload(Tag::EdgeBit, id));
                }
            }
            if (io.round() == 1)
            {
                io.decide(Output::scalar(0));
            }
        }));
    }
    const auto trace = run_sync(t, std::move(slots), RunOptions{0, 10, true});
    CHECK(trace.rounds_executed == 2);
    CHECK(trace.message_count == 6);
    for (AgentId id : ids)
    {
        REQUIRE(seen[id].size() == 2);
        CHECK(seen[id][0].first == 1);
        CHECK(seen[id][0].second < seen[id][1].second);
    }
    REQUIRE(trace.rounds.size() >= 1);
    for (std::size_t i = 1; i < trace.rounds[0].size(); ++i)
    {
        const auto& a = trace.rounds[0][i - 1];
        const auto& b = trace.rounds[0][i];
        CHECK(std::pair(a.from, a.to) < std::pair(b.from, b.to));
    }
}

TEST_CASE("run_sync: determinism and seed independence of round structure")
{
    RingOptions o;
    o.input_domain = 3;
    o.preference_domain = 3;
    const auto t = build_ring(6, 5, o);
    ProtocolParams p;
    // Ring coloring is left out: its coin moves agents between color steps.
    for (Problem prob : {Problem::KnowledgeSharing, Problem::LeaderElection, Problem::Partition})
    {
        const auto a = run_honest(prob, t, p, 17, true);
        const auto b = run_honest(prob, t, p, 17, true);
        CHECK(a.rounds == b.rounds);
        CHECK(a.outputs.size() == b.outputs.size());
        for (std::size_t i = 0; i < a.outputs.size(); ++i)
        {
            CHECK(a.outputs[i].output == b.outputs[i].output);
        }
        const auto c = run_honest(prob, t, p, 18, true);
        CHECK(c.rounds_executed == a.rounds_executed);
        CHECK(c.message_count == a.message_count);
    }
}

TEST_CASE("wake-up: honest ring gives every node n' and the same id list")
{
    const auto t = build_ring(7, 77);
    std::map<AgentId, RingView> views;
    const auto trace = run_probes(t, views);
    CHECK(views.size() == 7);
    std::vector<AgentId> expected;
    for (const auto& n : t.nodes())
    {
        expected.push_back(n.id);
    }
    std::sort(expected.begin(), expected.end());
    for (const auto& [id, v] : views)
    {
        CHECK(v.n_prime() == 7);
        CHECK(v.sorted_ids() == expected);
        CHECK(v.cycle == views.begin()->second.cycle);
        CHECK(v.at(v.position) == id);
    }
    CHECK_FALSE(trace.any_bottom());
    // The canonical cycle starts at the largest id.
    CHECK(views.begin()->second.cycle.front() == expected.back());
}

TEST_CASE("wake-up: a duplicated segment inflates n' to n+d-1")
{
    const auto t = build_ring(5, 8);
    const auto ex = apply_duplication(t, {t.nodes()[0].id, 3, DuplicationMode::Fixed}, 1);
    std::map<AgentId, RingView> views;
    run_probes(ex.graph, views);
    for (const auto& n : t.nodes())
    {
        if (n.id != t.nodes()[0].id)
        {
            CHECK(views.at(n.id).n_prime() == 7);
        }
    }
}

TEST_CASE("wake-up: a node echoing a different list makes the run erroneous")
{
    const auto t = build_ring(6, 31);
    std::map<AgentId, RingView> views;
    const auto trace = run_probes(t, views, t.nodes()[2].id);
    CHECK(trace.any_bottom());
}

TEST_CASE("wake-up: size bound aborts oversize rings")
{
    CHECK(detect_oversize(9, std::optional<std::size_t>(8)));
    CHECK_FALSE(detect_oversize(8, std::optional<std::size_t>(8)));
    CHECK_FALSE(detect_oversize(1000, std::optional<std::size_t>()));
    ProtocolParams p;
    p.size_bound = 4;
    const auto trace = run_honest(Problem::KnowledgeSharing, build_ring(5, 2), p, 1);
    CHECK(trace.legality == Legality::Erroneous);
    for (const auto& o : trace.outputs)
    {
        CHECK(o.output.bottom);
    }
}

TEST_CASE("canonical_cycle starts at the max id and heads to its smaller neighbor")
{
    CHECK(canonical_cycle({3, 9, 4, 1}) == std::vector<AgentId>{9, 3, 1, 4});
    CHECK(canonical_cycle({5, 2, 8}) == std::vector<AgentId>{8, 2, 5});
}

TEST_CASE("graph wake-up: every node learns the whole graph")
{
    for (std::uint64_t s = 0; s < 10; ++s)
    {
        const auto g = random_two_connected(4 + s, 0.3, s);
        std::vector<AgentSlot> slots;
        std::map<AgentId, std::size_t> learned;
        struct Probe : NodeLogic
        {
            GraphWakeUp wake;
            std::map<AgentId, std::size_t>* out;
            const NetworkTopology* truth;
            Probe(AgentId self, std::vector<AgentId> nbrs, std::map<AgentId, std::size_t>* o, const NetworkTopology* t)
                : NodeLogic(self, nbrs, RngStream(self)), wake(self, nbrs), out(o), truth(t)
            {
            }
            void on_step(NodeIo& io) override
            {
                const auto st = wake.step(io);
                if (st == PhaseStatus::Done)
                {
                    (*out)[id()] = wake.view().n_prime();
                    CHECK(wake.view().graph.edges() == truth->edges());
                    finish(Output::scalar(0));
                }
                else if (st == PhaseStatus::Failed)
                {
                    fail(io);
                }
            }
        };
        for (const auto& n : g.nodes())
        {
            slots.push_back(honest_slot(std::make_unique<Probe>(n.id, g.neighbors(n.id), &learned, &g)));
        }
        const auto trace = run_sync(g, std::move(slots), RunOptions{1, 500, false});
        CHECK_FALSE(trace.any_bottom());
        for (const auto& [id, size] : learned)
        {
            CHECK(size == g.size());
        }
        CHECK(learned.size() == g.size());
    }
}
