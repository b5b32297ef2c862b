#include "ras/adversary/emulation.hpp"

#include "ras/adversary/emulator.hpp"
#include "ras/protocols/registry.hpp"

#include <deque>
#include <set>

namespace ras
{
    NetworkTopology emulation_topology(std::size_t honest_side, std::uint64_t k, std::uint64_t seed)
    {
        RingOptions options;
        options.input_domain = k;
        options.preference_domain = k;
        const NetworkTopology ring = build_ring(honest_side, seed, options);
        std::set<AgentId> taken;
        for (const auto& n : ring.nodes())
        {
            taken.insert(n.id);
        }
        RngStream rng(splitmix64(seed ^ 0xe3));
        NodeSpec hub{fresh_ids(1, rng.next_u64(), taken).front(), rng.uniform(0, k - 1), rng.uniform(0, k - 1)};
        std::vector<NodeSpec> nodes{hub};
        nodes.insert(nodes.end(), ring.nodes().begin(), ring.nodes().end());
        std::vector<Edge> edges(ring.edges().begin(), ring.edges().end());
        for (const auto& n : ring.nodes())
        {
            edges.push_back(make_edge(hub.id, n.id));
        }
        return NetworkTopology(std::move(nodes), edges);
    }

    namespace
    {
        struct SearchState
        {
            std::set<AgentId> honest;
            bool done = false;
            bool flipped = false;
            std::size_t explored = 0;
        };

        bool same_prefix(const SubgraphEmulator& a, const SubgraphEmulator& b)
        {
            return a.outbound_log() == b.outbound_log();
        }
    }

    EmulationRun run_emulation_attack(const NetworkTopology& real, AgentId cheater, std::uint64_t preference,
                                      std::size_t emulated_size, std::uint64_t k, const PriorSpec& prior,
                                      std::uint64_t seed, bool search, std::size_t node_budget)
    {
        const ExpandedTopology ex =
            apply_duplication(real, {cheater, emulated_size, DuplicationMode::Fixed}, splitmix64(seed ^ 0xe1));
        ProtocolParams params;
        params.k = k;
        params.flood_ks = true;
        params.size_bound = prior.size_bound();
        LogicFactory factory = [params, seed](const NodeSpec& spec, const std::vector<AgentId>& nbrs) {
            return make_logic(Problem::KnowledgeSharing, spec, nbrs, params, node_stream(seed, spec.id));
        };
        RngStream rng = RngStream(seed).substream(0xe2);
        std::vector<NodeSpec> specs;
        for (AgentId v : ex.virtual_nodes)
        {
            NodeSpec s = real.node(cheater);
            s.id = v;
            if (v != cheater)
            {
                s.input = rng.uniform(0, k - 1);
            }
            specs.push_back(s);
        }

        auto state = std::make_shared<SearchState>();
        for (const auto& n : real.nodes())
        {
            if (n.id != cheater)
            {
                state->honest.insert(n.id);
            }
        }
        EmulatingAgent::Hook hook;
        if (search)
        {
            hook = [state, preference, k, node_budget](Round, const std::vector<Message>& inbound,
                                                       std::unique_ptr<SubgraphEmulator>& emu) {
                if (state->done)
                {
                    return;
                }
                std::map<AgentId, std::uint64_t> heard;
                auto scan = [&](const std::vector<Message>& batch) {
                    for (const auto& m : batch)
                    {
                        if (m.payload.tag == Tag::InputBroadcast && state->honest.count(m.payload.words[0]))
                        {
                            heard[m.payload.words[0]] = m.payload.words[1] % k;
                        }
                    }
                };
                for (const auto& batch : emu->inbound_log())
                {
                    scan(batch);
                }
                scan(inbound);
                if (heard.size() < state->honest.size())
                {
                    return;
                }
                state->done = true;
                std::uint64_t honest_sum = 0;
                for (const auto& [who, v] : heard)
                {
                    honest_sum = (honest_sum + v) % k;
                }
                auto total = [&](const std::vector<NodeSpec>& s) {
                    std::uint64_t t = honest_sum;
                    for (const auto& spec : s)
                    {
                        t = (t + spec.input) % k;
                    }
                    return t;
                };
                const std::vector<NodeSpec> current = emu->nodes();
                if (total(current) == preference % k)
                {
                    return;
                }
                // Breadth-first over input edits; the root is the current run.
                std::deque<std::pair<std::vector<NodeSpec>, std::size_t>> queue{{current, 0}};
                std::set<std::vector<std::uint64_t>> visited;
                auto key = [](const std::vector<NodeSpec>& s) {
                    std::vector<std::uint64_t> kv;
                    for (const auto& spec : s)
                    {
                        kv.push_back(spec.input);
                    }
                    return kv;
                };
                visited.insert(key(current));
                while (!queue.empty() && state->explored < node_budget)
                {
                    auto [cand, from] = queue.front();
                    queue.pop_front();
                    ++state->explored;
                    if (total(cand) == preference % k)
                    {
                        auto alt = emu->replay(cand);
                        if (same_prefix(*alt, *emu))
                        {
                            emu = std::move(alt);
                            state->flipped = true;
                            return;
                        }
                    }
                    for (std::size_t i = from; i < cand.size(); ++i)
                    {
                        for (std::uint64_t v = 0; v < k; ++v)
                        {
                            if (v == cand[i].input)
                            {
                                continue;
                            }
                            auto next = cand;
                            next[i].input = v;
                            if (visited.insert(key(next)).second)
                            {
                                queue.emplace_back(std::move(next), i + 1);
                            }
                        }
                    }
                }
            };
        }
        auto agent = std::make_unique<EmulatingAgent>(make_virtual_emulator(ex, specs, factory), frontier_nodes(ex),
                                                      collapse_first, hook);
        EmulationRun run;
        run.verdict.n_prime = ex.graph.size();
        run.verdict.detected = detect_oversize(ex.graph.size(), prior);
        run.verdict.trace = run_with_cheater(Problem::KnowledgeSharing, real, ex, params, std::move(agent), seed);
        run.verdict.cheater_utility = utility(cheater, run.verdict.trace, preference % k);
        run.flipped = state->flipped;
        run.explored = state->explored;
        return run;
    }
}
