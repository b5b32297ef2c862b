#include "ras/protocols/registry.hpp"

#include "ras/error.hpp"
#include "ras/protocols/flood_ks.hpp"
#include "ras/protocols/knowledge_sharing.hpp"
#include "ras/protocols/leader_election.hpp"
#include "ras/protocols/orientation.hpp"
#include "ras/protocols/partition.hpp"
#include "ras/protocols/ring_coloring.hpp"
#include "ras/protocols/witness_coloring.hpp"

namespace ras
{
    std::unique_ptr<NodeLogic> make_logic(Problem problem, const NodeSpec& spec, const std::vector<AgentId>& neighbors,
                                          const ProtocolParams& params, RngStream rng)
    {
        const bool ring_shaped = neighbors.size() == 2;
        auto need_ring = [&] {
            if (!ring_shaped)
            {
                throw InvalidTopology(problem_name(problem) + " runs on rings only");
            }
        };
        switch (problem)
        {
        case Problem::KnowledgeSharing:
            if (params.flood_ks)
            {
                return std::make_unique<FloodKsLogic>(spec.id, neighbors, spec.input, params.k, params.size_bound, rng);
            }
            need_ring();
            return std::make_unique<KsLogic>(spec.id, neighbors, spec.input, params.k, params.size_bound, rng);
        case Problem::ColoringWitness:
            return std::make_unique<WitnessColoringLogic>(spec.id, neighbors, spec.preference,
                                                          params.known_n.value_or(0), rng);
        case Problem::ColoringRing:
            need_ring();
            return std::make_unique<RingColoringLogic>(spec.id, neighbors, spec.preference, params.size_bound, rng);
        case Problem::LeaderElection:
            need_ring();
            return std::make_unique<LeaderElectionLogic>(spec.id, neighbors, params.size_bound, rng);
        case Problem::Partition:
            need_ring();
            return std::make_unique<PartitionLogic>(spec.id, neighbors, params.size_bound, rng);
        case Problem::Orientation:
            return std::make_unique<OrientationLogic>(spec.id, neighbors, rng);
        }
        throw InvalidTopology("unknown problem");
    }

    std::uint64_t preferred_output(Problem problem, const NodeSpec& spec, const ProtocolParams& params)
    {
        switch (problem)
        {
        case Problem::LeaderElection: return 1;
        case Problem::KnowledgeSharing: return spec.preference % params.k;
        default: return spec.preference;
        }
    }

    RngStream node_stream(std::uint64_t seed, AgentId node)
    {
        return RngStream(seed).substream(node);
    }

    ExecutionTrace run_honest(Problem problem, const NetworkTopology& t, const ProtocolParams& params,
                              std::uint64_t seed, bool record_messages)
    {
        ProtocolParams p = params;
        if (problem == Problem::KnowledgeSharing && !t.is_ring())
        {
            p.flood_ks = true;
        }
        if (!p.known_n)
        {
            p.known_n = t.size();
        }
        std::vector<AgentSlot> slots;
        for (const auto& node : t.nodes())
        {
            slots.push_back(honest_slot(make_logic(problem, node, t.neighbors(node.id), p, node_stream(seed, node.id))));
        }
        ExecutionTrace trace = run_sync(t, std::move(slots), RunOptions{seed, p.max_rounds, record_messages});
        apply_legality(problem, t, trace);
        return trace;
    }

    ExecutionTrace ks_ring(const NetworkTopology& t, std::uint64_t k, std::uint64_t seed)
    {
        ProtocolParams p;
        p.k = k;
        return run_honest(Problem::KnowledgeSharing, t, p, seed);
    }
}
