#include "ras/adversary/adaptive.hpp"

#include "ras/adversary/emulator.hpp"
#include "ras/error.hpp"
#include "ras/protocols/registry.hpp"

#include <set>

namespace ras
{
    namespace
    {
        struct AdaptiveStats
        {
            std::size_t d = 0;
            Round commit_round = 0;
            bool consistent = false;
        };

        class AdaptiveAgent : public Agent
        {
        public:
            AdaptiveAgent(const NetworkTopology& real, const ExpandedTopology& ex, Problem problem,
                          const ProtocolParams& params, std::uint64_t seed, std::optional<Round> stop_round,
                          std::shared_ptr<AdaptiveStats> stats)
                : stats_(std::move(stats)), real_(real), problem_(problem), params_(params), seed_(seed), stop_round_(stop_round),
                  id_rng_(RngStream(seed).substream(0xada))
            {
                f0_ = ex.virtual_nodes.front();
                g0_ = ex.virtual_nodes.back();
                left_ = external(ex, f0_);
                right_ = external(ex, g0_);
                for (const auto& n : ex.graph.nodes())
                {
                    taken_.insert(n.id);
                }
                f_.push_back(f0_);
                g_.push_back(g0_);
            }

            void on_round(AgentIo& io) override
            {
                if (io.decided())
                {
                    return;
                }
                std::vector<Message> inbound;
                for (AgentId f : {f0_, g0_})
                {
                    const auto box = io.inbox(f);
                    inbound.insert(inbound.end(), box.begin(), box.end());
                }
                if (!emu_)
                {
                    probe(io, inbound);
                    if (!emu_)
                    {
                        return;
                    }
                }
                for (auto& m : emu_->step(io.round(), inbound))
                {
                    io.send(std::move(m));
                }
                if (emu_->all_decided() || emu_->any_failed())
                {
                    io.decide(collapse_first(*emu_));
                }
            }

        private:
            static AgentId external(const ExpandedTopology& ex, AgentId frontier)
            {
                for (AgentId nb : ex.graph.neighbors(frontier))
                {
                    if (nb != ex.virtual_nodes.front() && nb != ex.virtual_nodes.back())
                    {
                        return nb;
                    }
                }
                throw InvalidScheme("frontier without an outside neighbor");
            }

            AgentId fresh()
            {
                const AgentId id = fresh_ids(1, id_rng_.next_u64(), taken_).front();
                taken_.insert(id);
                return id;
            }

            void probe(AgentIo& io, const std::vector<Message>& inbound)
            {
                const Round r = io.round();
                bool collision = false;
                for (const auto& m : inbound)
                {
                    if (m.payload.tag != Tag::IdAnnounce)
                    {
                        continue;
                    }
                    collision = !seen_.insert(m.payload.words[0]).second || collision;
                }
                log_.push_back(inbound);
                const bool commit = stop_round_ ? r == *stop_round_ : (r > 0 && collision);
                if (!commit)
                {
                    if (r > 0)
                    {
                        f_.push_back(fresh());
                        g_.push_back(fresh());
                    }
                    Message a{f0_, left_, r, make_payload(Tag::IdAnnounce, f_.back())};
                    Message b{g0_, right_, r, make_payload(Tag::IdAnnounce, g_.back())};
                    sent_.push_back({a, b});
                    io.send(a);
                    io.send(b);
                    return;
                }
                stats_->commit_round = r;
                // Chain f0 .. f_{t-1}, g_{t-1} .. g0.
                std::vector<AgentId> chain(f_.begin(), f_.end());
                chain.insert(chain.end(), g_.rbegin(), g_.rend());
                std::vector<NodeSpec> specs;
                std::vector<Edge> internal;
                for (std::size_t i = 0; i < chain.size(); ++i)
                {
                    NodeSpec s = real_.node(f0_);
                    s.id = chain[i];
                    specs.push_back(s);
                    if (i + 1 < chain.size())
                    {
                        internal.push_back(make_edge(chain[i], chain[i + 1]));
                    }
                }
                std::map<AgentId, std::vector<AgentId>> external{{f0_, {left_}}, {g0_, {right_}}};
                const ProtocolParams params = params_;
                const Problem problem = problem_;
                const std::uint64_t seed = seed_;
                LogicFactory factory = [params, problem, seed](const NodeSpec& spec, const std::vector<AgentId>& nbrs) {
                    return make_logic(problem, spec, nbrs, params, node_stream(seed, spec.id));
                };
                emu_ = std::make_unique<SubgraphEmulator>(specs, internal, external, factory);
                stats_->d = chain.size();
                stats_->consistent = true;
                for (Round past = 0; past < r; ++past)
                {
                    auto out = emu_->step(past, log_[past]);
                    stats_->consistent = stats_->consistent && out == sent_[past];
                }
            }

            std::shared_ptr<AdaptiveStats> stats_;
            const NetworkTopology& real_;
            Problem problem_;
            ProtocolParams params_;
            std::uint64_t seed_;
            std::optional<Round> stop_round_;
            RngStream id_rng_;
            AgentId f0_ = 0;
            AgentId g0_ = 0;
            AgentId left_ = 0;
            AgentId right_ = 0;
            std::set<AgentId> taken_;
            std::set<AgentId> seen_;
            std::vector<AgentId> f_;
            std::vector<AgentId> g_;
            std::vector<std::vector<Message>> log_;
            std::vector<std::vector<Message>> sent_;
            std::unique_ptr<SubgraphEmulator> emu_;
        };
    }

    AdaptiveResult run_adaptive_duplication(const NetworkTopology& ring, AgentId cheater, std::uint64_t seed,
                                            std::optional<Round> stop_round, Problem problem)
    {
        if (!ring.is_ring())
        {
            throw InvalidTopology("adaptive duplication runs on rings");
        }
        const ExpandedTopology ex = apply_duplication(ring, {cheater, 2, DuplicationMode::AdaptiveUntilNKnown},
                                                      splitmix64(seed ^ 0xada));
        ProtocolParams params;
        auto stats = std::make_shared<AdaptiveStats>();
        auto agent = std::make_unique<AdaptiveAgent>(ring, ex, problem, params, seed, stop_round, stats);
        AdaptiveResult result;
        result.n = ring.size();
        result.verdict.trace = run_with_cheater(problem, ring, ex, params, std::move(agent), seed);
        result.d = stats->d;
        result.commit_round = stats->commit_round;
        result.consistent = stats->consistent;
        result.verdict.n_prime = ring.size() - 1 + result.d;
        result.verdict.cheater_utility =
            utility(cheater, result.verdict.trace, preferred_output(problem, ring.node(cheater), params));
        return result;
    }
}
