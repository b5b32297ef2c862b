#include "ras/adversary/ks_sybil.hpp"

#include "ras/adversary/emulator.hpp"
#include "ras/protocols/knowledge_sharing.hpp"
#include "ras/protocols/registry.hpp"

#include <map>
#include <set>
#include <tuple>

namespace ras
{
    namespace
    {
        struct Snoop
        {
            std::set<AgentId> virt;
            // (origin, target, kind) -> share value
            std::map<std::tuple<AgentId, AgentId, std::uint64_t>, std::uint64_t> shares;
            bool decided = false;
            bool forced = false;
        };

        std::vector<NodeSpec> virtual_specs(const NetworkTopology& t, const ExpandedTopology& ex, std::uint64_t k,
                                            std::uint64_t seed)
        {
            RngStream rng = RngStream(seed).substream(0x5151);
            std::vector<NodeSpec> specs;
            for (AgentId v : ex.virtual_nodes)
            {
                NodeSpec s = t.node(ex.scheme.cheater);
                s.id = v;
                if (v != ex.scheme.cheater)
                {
                    s.input = rng.uniform(0, k - 1);
                }
                specs.push_back(s);
            }
            return specs;
        }

        void try_force(Snoop& snoop, SubgraphEmulator& emu, Round round, std::uint64_t preference, std::uint64_t k)
        {
            auto& any = dynamic_cast<KsLogic&>(emu.logic(emu.nodes().front().id));
            if (snoop.decided || !any.core().started())
            {
                return;
            }
            const RingView& view = any.core().view();
            const std::size_t n = view.n_prime();
            if (round != any.core().base() + n + 1)
            {
                return;
            }
            snoop.decided = true;
            // The virtual node at the counter-clockwise end of the segment.
            std::optional<std::size_t> lead;
            for (std::size_t pos = 0; pos < n; ++pos)
            {
                if (snoop.virt.count(view.at(pos)) && !snoop.virt.count(view.walk(pos, -1)))
                {
                    lead = pos;
                }
            }
            if (!lead)
            {
                return;
            }
            const AgentId t1 = view.at(first_target(*lead, n));
            const AgentId t2 = view.at(second_target(*lead, n));
            if (!snoop.virt.count(t1) || !snoop.virt.count(t2))
            {
                return;
            }
            std::uint64_t others = 0;
            for (AgentId id : view.cycle)
            {
                if (id == view.at(*lead))
                {
                    continue;
                }
                if (snoop.virt.count(id))
                {
                    others = (others + dynamic_cast<KsLogic&>(emu.logic(id)).core().input()) % k;
                    continue;
                }
                std::optional<std::uint64_t> value;
                for (std::size_t target : {first_target(view.position_of(id), n), second_target(view.position_of(id), n)})
                {
                    const AgentId tid = view.at(target);
                    auto r = snoop.shares.find({id, tid, 0});
                    auto x = snoop.shares.find({id, tid, 1});
                    if (r != snoop.shares.end() && x != snoop.shares.end())
                    {
                        value = reconstruct(r->second, x->second, k);
                    }
                }
                if (!value)
                {
                    return;
                }
                others = (others + *value) % k;
            }
            auto& leader = dynamic_cast<KsLogic&>(emu.logic(view.at(*lead)));
            leader.core().override_broadcast((preference % k + k - others) % k);
            dynamic_cast<KsLogic&>(emu.logic(t1)).core().disable_checks();
            dynamic_cast<KsLogic&>(emu.logic(t2)).core().disable_checks();
            snoop.forced = true;
        }
    }

    KsSybilResult run_ks_sybil(const NetworkTopology& t, AgentId cheater, std::uint64_t preference, std::size_t d,
                               std::uint64_t k, const PriorSpec& prior, std::uint64_t seed, bool record)
    {
        const ExpandedTopology ex = apply_duplication(t, {cheater, d, DuplicationMode::Fixed}, splitmix64(seed ^ 0xd0d0));
        ProtocolParams params;
        params.k = k;
        params.size_bound = prior.size_bound();

        LogicFactory factory = [&, seed](const NodeSpec& spec, const std::vector<AgentId>& nbrs) {
            return make_logic(Problem::KnowledgeSharing, spec, nbrs, params, node_stream(seed, spec.id));
        };
        auto emu = make_virtual_emulator(ex, virtual_specs(t, ex, k, seed), factory);
        auto snoop = std::make_shared<Snoop>();
        snoop->virt = {ex.virtual_nodes.begin(), ex.virtual_nodes.end()};
        emu->set_observer([snoop](AgentId, Round, std::span<const Message> inbox) {
            for (const auto& m : inbox)
            {
                const auto& w = m.payload.words;
                if (m.payload.tag == Tag::SecretShare && !snoop->virt.count(w[0]))
                {
                    snoop->shares[{w[0], w[1], w[2]}] = w[3];
                }
            }
        });
        auto hook = [snoop, preference, k](Round r, const std::vector<Message>&, std::unique_ptr<SubgraphEmulator>& e) {
            try_force(*snoop, *e, r, preference, k);
        };
        auto agent = std::make_unique<EmulatingAgent>(std::move(emu), frontier_nodes(ex), collapse_first, hook);

        KsSybilResult result;
        result.verdict.n_prime = ex.graph.size();
        result.verdict.detected = detect_oversize(ex.graph.size(), prior);
        result.verdict.trace =
            run_with_cheater(Problem::KnowledgeSharing, t, ex, params, std::move(agent), seed, record);
        result.verdict.cheater_utility = utility(cheater, result.verdict.trace, preference % k);
        result.forced = snoop->forced;
        return result;
    }

    CheaterVerdict run_le_sybil(const NetworkTopology& t, AgentId cheater, std::size_t d, const PriorSpec& prior,
                                std::uint64_t seed, bool record)
    {
        const ExpandedTopology ex = apply_duplication(t, {cheater, d, DuplicationMode::Fixed}, splitmix64(seed ^ 0xd0d0));
        ProtocolParams params;
        params.size_bound = prior.size_bound();
        LogicFactory factory = [&, seed](const NodeSpec& spec, const std::vector<AgentId>& nbrs) {
            return make_logic(Problem::LeaderElection, spec, nbrs, params, node_stream(seed, spec.id));
        };
        std::vector<NodeSpec> specs;
        for (AgentId v : ex.virtual_nodes)
        {
            NodeSpec s = t.node(cheater);
            s.id = v;
            specs.push_back(s);
        }
        auto any_elected = [](const SubgraphEmulator& e) {
            if (e.any_failed())
            {
                return Output::abort();
            }
            for (const auto& spec : e.nodes())
            {
                if (e.logic(spec.id).output()->value.at(0) == 1)
                {
                    return Output::scalar(1);
                }
            }
            return Output::scalar(0);
        };
        auto agent = std::make_unique<EmulatingAgent>(make_virtual_emulator(ex, specs, factory), frontier_nodes(ex),
                                                      any_elected);
        CheaterVerdict v;
        v.n_prime = ex.graph.size();
        v.detected = detect_oversize(ex.graph.size(), prior);
        v.trace = run_with_cheater(Problem::LeaderElection, t, ex, params, std::move(agent), seed, record);
        v.cheater_utility = utility(cheater, v.trace, 1);
        return v;
    }
}
