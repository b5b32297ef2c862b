#include "ras/cli/scenario.hpp"

#include "ras/error.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace ras
{
    using nlohmann::json;

    namespace
    {
        std::string read_file(const std::filesystem::path& path)
        {
            std::ifstream in(path, std::ios::binary);
            if (!in)
            {
                throw SchemaError("cannot read " + path.string());
            }
            std::ostringstream ss;
            ss << in.rdbuf();
            return ss.str();
        }

        // Collects every diagnostic before failing.
        struct Checker
        {
            std::vector<std::string> errors;

            void fail(const std::string& where, const std::string& what) { errors.push_back(where + ": " + what); }

            void only(const json& obj, const std::string& where, std::initializer_list<const char*> allowed)
            {
                for (const auto& [key, _] : obj.items())
                {
                    bool ok = false;
                    for (const char* a : allowed)
                    {
                        ok = ok || key == a;
                    }
                    if (!ok)
                    {
                        fail(where, "unknown field \"" + key + "\"");
                    }
                }
            }

            std::optional<std::uint64_t> uint(const json& obj, const std::string& key, const std::string& where,
                                              std::uint64_t min = 0)
            {
                if (!obj.contains(key) || obj[key].is_null())
                {
                    return std::nullopt;
                }
                const json& v = obj[key];
                if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0))
                {
                    fail(where + "." + key, "expected a non-negative integer");
                    return std::nullopt;
                }
                const auto x = v.get<std::uint64_t>();
                if (x < min)
                {
                    fail(where + "." + key, "must be at least " + std::to_string(min));
                    return std::nullopt;
                }
                return x;
            }

            std::optional<std::string> str(const json& obj, const std::string& key, const std::string& where)
            {
                if (!obj.contains(key) || obj[key].is_null())
                {
                    return std::nullopt;
                }
                if (!obj[key].is_string())
                {
                    fail(where + "." + key, "expected a string");
                    return std::nullopt;
                }
                return obj[key].get<std::string>();
            }

            bool object(const json& v, const std::string& where)
            {
                if (!v.is_object())
                {
                    fail(where, "expected an object");
                    return false;
                }
                return true;
            }
        };

        std::optional<PriorSpec> parse_prior(Checker& c, const json& v, const std::string& where)
        {
            if (!c.object(v, where))
            {
                return std::nullopt;
            }
            c.only(v, where, {"kind", "alpha", "beta"});
            const auto kind_name = c.str(v, "kind", where);
            if (!kind_name)
            {
                c.fail(where + ".kind", "required");
                return std::nullopt;
            }
            PriorKind kind;
            try
            {
                kind = prior_kind_from_name(*kind_name);
            }
            catch (const SchemaError& e)
            {
                c.fail(where + ".kind", e.what());
                return std::nullopt;
            }
            const auto alpha = c.uint(v, "alpha", where, 1);
            const auto beta = c.uint(v, "beta", where, 1);
            try
            {
                switch (kind)
                {
                case PriorKind::Unbounded:
                    if (beta)
                    {
                        c.fail(where + ".beta", "not allowed for unbounded");
                    }
                    return PriorSpec::unbounded(static_cast<std::int64_t>(alpha.value_or(1)));
                case PriorKind::Point:
                    if (!alpha)
                    {
                        c.fail(where + ".alpha", "required");
                        return std::nullopt;
                    }
                    return PriorSpec::point(static_cast<std::int64_t>(*alpha));
                default:
                    if (!alpha || !beta)
                    {
                        c.fail(where, "alpha and beta are required");
                        return std::nullopt;
                    }
                    if (*beta < *alpha)
                    {
                        c.fail(where, "beta must be at least alpha");
                        return std::nullopt;
                    }
                    return kind == PriorKind::Uniform
                        ? PriorSpec::uniform(static_cast<std::int64_t>(*alpha), static_cast<std::int64_t>(*beta))
                        : PriorSpec::geometric(static_cast<std::int64_t>(*alpha), static_cast<std::int64_t>(*beta));
                }
            }
            catch (const Error& e)
            {
                c.fail(where, e.what());
            }
            return std::nullopt;
        }

        NetworkTopology topology_from_json(const json& doc)
        {
            if (!doc.is_object() || !doc.contains("nodes") || !doc["nodes"].is_array() || !doc.contains("edges") ||
                !doc["edges"].is_array())
            {
                throw SchemaError("topology: expected {\"nodes\": [...], \"edges\": [...]}");
            }
            std::vector<NodeSpec> nodes;
            for (const auto& n : doc["nodes"])
            {
                if (!n.is_object() || !n.contains("id") || !n["id"].is_number_unsigned())
                {
                    throw SchemaError("topology.nodes: every node needs an unsigned \"id\"");
                }
                NodeSpec s;
                s.id = n["id"].get<std::uint64_t>();
                s.input = n.value("input", std::uint64_t{0});
                s.preference = n.value("preference", std::uint64_t{0});
                nodes.push_back(s);
            }
            std::vector<Edge> edges;
            for (const auto& e : doc["edges"])
            {
                if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned())
                {
                    throw SchemaError("topology.edges: expected pairs of ids");
                }
                edges.push_back(make_edge(e[0].get<AgentId>(), e[1].get<AgentId>()));
            }
            try
            {
                return NetworkTopology(std::move(nodes), edges);
            }
            catch (const InvalidTopology& e)
            {
                throw SchemaError(std::string("topology: ") + e.what());
            }
        }

        bool is_coloring(Problem p)
        {
            return p == Problem::ColoringRing || p == Problem::ColoringWitness;
        }
    }

    NetworkTopology parse_topology(const std::string& text)
    {
        json doc;
        try
        {
            doc = json::parse(text);
        }
        catch (const json::parse_error& e)
        {
            throw SchemaError(std::string("topology: ") + e.what());
        }
        return topology_from_json(doc);
    }

    Scenario ScenarioConfig::scenario() const
    {
        Scenario s;
        s.problem = problem.value_or(Problem::KnowledgeSharing);
        s.prior = prior.value_or(ring_n ? PriorSpec::unbounded(static_cast<std::int64_t>(*ring_n)) : PriorSpec::unbounded());
        s.k = k_or_default();
        s.colors = colors_or_default();
        if (adversary)
        {
            s.strategy = adversary->strategy;
            s.d = adversary->d;
            s.cheater_index = adversary->cheater;
            s.honest_side = adversary->honest_side;
        }
        s.topology = topology;
        s.ring_n = ring_n;
        return s;
    }

    NetworkTopology ScenarioConfig::network(std::uint64_t run_seed) const
    {
        if (topology)
        {
            return *topology;
        }
        if (!ring_n)
        {
            throw SchemaError("config.topology: required for this command");
        }
        const Problem p = problem.value_or(Problem::KnowledgeSharing);
        const std::uint64_t domain = p == Problem::KnowledgeSharing ? k_or_default() : is_coloring(p) ? colors_or_default() : 2;
        RingOptions options;
        options.input_domain = domain;
        options.preference_domain = domain;
        return build_ring(*ring_n, run_seed, options);
    }

    ScenarioConfig parse_config(const std::string& text, const std::filesystem::path& base_dir)
    {
        json doc;
        try
        {
            doc = json::parse(text);
        }
        catch (const json::parse_error& e)
        {
            throw SchemaError(std::string("config is not valid JSON: ") + e.what());
        }
        Checker c;
        ScenarioConfig cfg;
        if (!c.object(doc, "config"))
        {
            throw SchemaError(c.errors.front());
        }
        c.only(doc, "config", {"problem", "topology", "prior", "k", "colors", "adversary", "trials", "seed", "output",
                               "sweep", "ranges", "max_rounds"});

        if (auto name = c.str(doc, "problem", "config"))
        {
            try
            {
                cfg.problem = problem_from_name(*name);
            }
            catch (const Error& e)
            {
                c.fail("config.problem", e.what());
            }
        }

        if (doc.contains("prior"))
        {
            cfg.prior = parse_prior(c, doc["prior"], "config.prior");
        }

        cfg.k = c.uint(doc, "k", "config", 2);
        cfg.colors = c.uint(doc, "colors", "config", 1);
        if (auto t = c.uint(doc, "trials", "config", 1))
        {
            cfg.trials = *t;
        }
        if (auto m = c.uint(doc, "max_rounds", "config", 1))
        {
            cfg.max_rounds = static_cast<std::uint32_t>(std::min<std::uint64_t>(*m, UINT32_MAX));
        }
        if (auto s = c.uint(doc, "seed", "config"))
        {
            cfg.seed = *s;
        }

        if (cfg.problem)
        {
            const Problem p = *cfg.problem;
            if (p == Problem::KnowledgeSharing && !cfg.k)
            {
                c.fail("config.k", "required for ks");
            }
            if (p != Problem::KnowledgeSharing && doc.contains("k"))
            {
                c.fail("config.k", "only allowed for ks");
            }
            if (!is_coloring(p) && doc.contains("colors"))
            {
                c.fail("config.colors", "only allowed for coloring problems");
            }
            if (p == Problem::ColoringRing && cfg.colors && *cfg.colors < 3)
            {
                c.fail("config.colors", "ring coloring needs at least 3 colors");
            }
            if (p == Problem::ColoringWitness && cfg.colors && *cfg.colors < 1)
            {
                c.fail("config.colors", "must be positive");
            }
        }

        if (doc.contains("topology"))
        {
            const json& t = doc["topology"];
            if (c.object(t, "config.topology"))
            {
                c.only(t, "config.topology", {"kind", "n", "path"});
                const auto kind = c.str(t, "kind", "config.topology");
                if (kind == "ring")
                {
                    const auto n = c.uint(t, "n", "config.topology", 3);
                    if (!n)
                    {
                        c.fail("config.topology.n", "required for ring");
                    }
                    else
                    {
                        cfg.ring_n = *n;
                    }
                }
                else if (kind == "file")
                {
                    const auto path = c.str(t, "path", "config.topology");
                    if (!path)
                    {
                        c.fail("config.topology.path", "required for file");
                    }
                    else
                    {
                        std::filesystem::path p(*path);
                        if (p.is_relative() && !base_dir.empty())
                        {
                            p = base_dir / p;
                        }
                        try
                        {
                            cfg.topology = parse_topology(read_file(p));
                        }
                        catch (const SchemaError& e)
                        {
                            c.fail("config.topology", e.what());
                        }
                    }
                }
                else
                {
                    c.fail("config.topology.kind", "expected \"ring\" or \"file\"");
                }
            }
        }

        if (doc.contains("adversary") && !doc["adversary"].is_null())
        {
            const json& a = doc["adversary"];
            if (c.object(a, "config.adversary"))
            {
                c.only(a, "config.adversary", {"strategy", "d", "cheater", "honest_side"});
                AdversaryConfig adv;
                if (auto s = c.str(a, "strategy", "config.adversary"))
                {
                    try
                    {
                        adv.strategy = strategy_from_name(*s);
                    }
                    catch (const SchemaError& e)
                    {
                        c.fail("config.adversary.strategy", e.what());
                    }
                }
                else
                {
                    c.fail("config.adversary.strategy", "required");
                }
                adv.d = c.uint(a, "d", "config.adversary", 1).value_or(1);
                adv.cheater = c.uint(a, "cheater", "config.adversary").value_or(0);
                adv.honest_side = c.uint(a, "honest_side", "config.adversary", 3).value_or(3);
                const std::size_t size = cfg.topology ? cfg.topology->size() : cfg.ring_n.value_or(0);
                if (size > 0 && adv.cheater >= size)
                {
                    c.fail("config.adversary.cheater", "index outside the topology");
                }
                if (cfg.problem)
                {
                    const Problem p = *cfg.problem;
                    const bool ok = adv.strategy == Strategy::Honest ||
                                    (adv.strategy == Strategy::KsForce && p == Problem::KnowledgeSharing) ||
                                    (adv.strategy == Strategy::Emulation && p == Problem::KnowledgeSharing) ||
                                    (adv.strategy == Strategy::LeDuplicate && p == Problem::LeaderElection) ||
                                    (adv.strategy == Strategy::AdaptiveDuplication && p != Problem::ColoringWitness &&
                                     p != Problem::Orientation);
                    if (!ok)
                    {
                        c.fail("config.adversary.strategy",
                               strategy_name(adv.strategy) + " does not apply to " + problem_name(p));
                    }
                }
                cfg.adversary = adv;
            }
        }

        if (doc.contains("output"))
        {
            const json& o = doc["output"];
            if (c.object(o, "config.output"))
            {
                c.only(o, "config.output", {"path", "format"});
                if (auto p = c.str(o, "path", "config.output"))
                {
                    cfg.output_path = *p;
                }
                if (auto f = c.str(o, "format", "config.output"))
                {
                    if (*f == "json")
                    {
                        cfg.format = OutputFormat::Json;
                    }
                    else if (*f == "csv")
                    {
                        cfg.format = OutputFormat::Csv;
                    }
                    else
                    {
                        c.fail("config.output.format", "expected \"json\" or \"csv\"");
                    }
                }
            }
        }

        if (doc.contains("sweep"))
        {
            const json& s = doc["sweep"];
            if (c.object(s, "config.sweep"))
            {
                c.only(s, "config.sweep", {"priors", "k", "d"});
                SweepMatrix m;
                if (s.contains("priors"))
                {
                    if (!s["priors"].is_array())
                    {
                        c.fail("config.sweep.priors", "expected an array");
                    }
                    else
                    {
                        for (std::size_t i = 0; i < s["priors"].size(); ++i)
                        {
                            if (auto p = parse_prior(c, s["priors"][i], "config.sweep.priors[" + std::to_string(i) + "]"))
                            {
                                m.priors.push_back(*p);
                            }
                        }
                    }
                }
                auto uints = [&](const char* key, std::uint64_t min, auto& out) {
                    if (!s.contains(key))
                    {
                        return;
                    }
                    if (!s[key].is_array())
                    {
                        c.fail(std::string("config.sweep.") + key, "expected an array");
                        return;
                    }
                    for (const auto& v : s[key])
                    {
                        if (!v.is_number_unsigned() || v.get<std::uint64_t>() < min)
                        {
                            c.fail(std::string("config.sweep.") + key, "entries must be integers >= " + std::to_string(min));
                            return;
                        }
                        out.push_back(v.get<std::uint64_t>());
                    }
                };
                uints("k", 2, m.ks);
                uints("d", 1, m.ds);
                cfg.sweep = m;
            }
        }

        if (doc.contains("ranges"))
        {
            const json& r = doc["ranges"];
            if (c.object(r, "config.ranges"))
            {
                c.only(r, "config.ranges", {"alpha_min", "alpha_max", "k_min", "k_max"});
                auto& g = cfg.ranges;
                g.alpha_min = static_cast<std::int64_t>(c.uint(r, "alpha_min", "config.ranges", 1).value_or(g.alpha_min));
                g.alpha_max = static_cast<std::int64_t>(c.uint(r, "alpha_max", "config.ranges", 1).value_or(g.alpha_max));
                g.k_min = c.uint(r, "k_min", "config.ranges", 2).value_or(g.k_min);
                g.k_max = c.uint(r, "k_max", "config.ranges", 2).value_or(g.k_max);
                if (g.alpha_max < g.alpha_min || g.k_max < g.k_min)
                {
                    c.fail("config.ranges", "empty range");
                }
            }
        }

        if (!c.errors.empty())
        {
            std::string msg = "invalid config:";
            for (const auto& e : c.errors)
            {
                msg += "\n  " + e;
            }
            throw SchemaError(msg);
        }
        return cfg;
    }

    ScenarioConfig load_config(const std::filesystem::path& path)
    {
        return parse_config(read_file(path), path.parent_path());
    }
}
