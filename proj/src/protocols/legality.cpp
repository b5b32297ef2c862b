#include "ras/protocols/legality.hpp"

#include "ras/error.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace ras
{
    namespace
    {
        const std::pair<Problem, const char*> problem_names[] = {
            {Problem::KnowledgeSharing, "ks"},
            {Problem::ColoringWitness, "coloring-witness"},
            {Problem::ColoringRing, "coloring-ring"},
            {Problem::LeaderElection, "leader-election"},
            {Problem::Partition, "partition"},
            {Problem::Orientation, "orientation"},
        };

        bool orientation_agrees(const NetworkTopology& t, const ExecutionTrace& trace)
        {
            // value = [neighbor, head, neighbor, head, ...]
            std::map<std::pair<AgentId, AgentId>, AgentId> heads;
            for (const auto& o : trace.outputs)
            {
                const auto& v = o.output.value;
                if (v.size() != 2 * t.degree(o.agent))
                {
                    return false;
                }
                for (std::size_t i = 0; i + 1 < v.size(); i += 2)
                {
                    if (v[i + 1] != v[i] && v[i + 1] != o.agent)
                    {
                        return false;
                    }
                    heads[{o.agent, v[i]}] = v[i + 1];
                }
            }
            for (const auto& [a, b] : t.edges())
            {
                auto ab = heads.find({a, b});
                auto ba = heads.find({b, a});
                if (ab == heads.end() || ba == heads.end() || ab->second != ba->second)
                {
                    return false;
                }
            }
            return true;
        }
    }

    std::string problem_name(Problem p)
    {
        for (const auto& [value, name] : problem_names)
        {
            if (value == p)
            {
                return name;
            }
        }
        return "?";
    }

    Problem problem_from_name(const std::string& name)
    {
        for (const auto& [value, text] : problem_names)
        {
            if (name == text)
            {
                return value;
            }
        }
        throw SchemaError("unknown problem: " + name);
    }

    Legality legality(Problem problem, const NetworkTopology& t, const ExecutionTrace& trace)
    {
        if (trace.outputs.size() != t.size() || trace.any_bottom())
        {
            return Legality::Erroneous;
        }
        for (const auto& o : trace.outputs)
        {
            if (!t.contains(o.agent))
            {
                return Legality::Erroneous;
            }
        }
        auto scalar = [&](AgentId a) -> std::optional<std::uint64_t> {
            const auto& v = trace.output_of(a).value;
            if (v.size() != 1)
            {
                return std::nullopt;
            }
            return v[0];
        };
        bool ok = true;
        switch (problem)
        {
        case Problem::KnowledgeSharing:
        {
            const auto first = scalar(trace.outputs.front().agent);
            for (const auto& o : trace.outputs)
            {
                ok = ok && first && scalar(o.agent) == first;
            }
            break;
        }
        case Problem::ColoringWitness:
        case Problem::ColoringRing:
            for (const auto& o : trace.outputs)
            {
                ok = ok && scalar(o.agent).has_value();
            }
            for (const auto& [a, b] : t.edges())
            {
                ok = ok && scalar(a) != scalar(b);
            }
            break;
        case Problem::LeaderElection:
        {
            std::size_t leaders = 0;
            for (const auto& o : trace.outputs)
            {
                const auto v = scalar(o.agent);
                ok = ok && v && *v <= 1;
                leaders += v == std::optional<std::uint64_t>(1) ? 1 : 0;
            }
            ok = ok && leaders == 1;
            break;
        }
        case Problem::Partition:
        {
            std::size_t ones = 0;
            for (const auto& o : trace.outputs)
            {
                const auto v = scalar(o.agent);
                ok = ok && v && *v <= 1;
                ones += v == std::optional<std::uint64_t>(1) ? 1 : 0;
            }
            ok = ok && t.size() % 2 == 0 && 2 * ones == t.size();
            break;
        }
        case Problem::Orientation:
            ok = orientation_agrees(t, trace);
            break;
        }
        return ok ? Legality::Legal : Legality::Erroneous;
    }

    void apply_legality(Problem problem, const NetworkTopology& t, ExecutionTrace& trace)
    {
        trace.legality = legality(problem, t, trace);
    }

    int utility(AgentId a, const ExecutionTrace& trace, std::uint64_t preference)
    {
        if (trace.legality != Legality::Legal)
        {
            return 0;
        }
        const Output& o = trace.output_of(a);
        return !o.bottom && o.value.size() == 1 && o.value[0] == preference ? 1 : 0;
    }

    bool check_full_knowledge(std::uint64_t k, std::size_t m, const OutputFunction& q)
    {
        auto eval = [&](std::span<const std::uint64_t> in) {
            if (q)
            {
                return q(in);
            }
            std::uint64_t s = 0;
            for (auto x : in)
            {
                s = (s + x) % k;
            }
            return s;
        };
        std::vector<std::uint64_t> in(m, 0);
        std::vector<std::uint64_t> others(m > 0 ? m - 1 : 0, 0);
        for (std::size_t j = 0; j < m; ++j)
        {
            // Odometer over the other m-1 inputs.
            std::fill(others.begin(), others.end(), 0);
            while (true)
            {
                std::vector<std::size_t> hits(k, 0);
                for (std::uint64_t x = 0; x < k; ++x)
                {
                    for (std::size_t i = 0, o = 0; i < m; ++i)
                    {
                        in[i] = i == j ? x : others[o++];
                    }
                    const auto y = eval(in);
                    if (y >= k)
                    {
                        return false;
                    }
                    ++hits[y];
                }
                if (std::adjacent_find(hits.begin(), hits.end(), std::not_equal_to<>()) != hits.end())
                {
                    return false;
                }
                std::size_t pos = 0;
                while (pos < others.size() && ++others[pos] == k)
                {
                    others[pos++] = 0;
                }
                if (pos == others.size())
                {
                    break;
                }
            }
        }
        return true;
    }
}
