#include "ras/cli/commands.hpp"

#include "ras/adversary/adaptive.hpp"
#include "ras/adversary/emulation.hpp"
#include "ras/adversary/ks_sybil.hpp"
#include "ras/analysis/equilibrium.hpp"
#include "ras/cli/csv.hpp"
#include "ras/cli/trace_json.hpp"
#include "ras/error.hpp"
#include "ras/protocols/registry.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <tuple>

namespace ras
{
    using nlohmann::json;

    void apply_overrides(ScenarioConfig& cfg, const Overrides& o)
    {
        if (o.seed)
        {
            cfg.seed = *o.seed;
        }
        if (o.trials)
        {
            cfg.trials = *o.trials;
        }
        if (o.out)
        {
            cfg.output_path = *o.out;
        }
    }

    namespace
    {
        Problem require_problem(const ScenarioConfig& cfg)
        {
            if (!cfg.problem)
            {
                throw SchemaError("invalid config:\n  config.problem: required for this command");
            }
            return *cfg.problem;
        }

        void write_file(const std::filesystem::path& path, const std::string& content)
        {
            std::ofstream f(path, std::ios::binary);
            if (!f)
            {
                throw Error("cannot write " + path.string());
            }
            f << content;
        }

        std::string fixed(double v, int digits = 6)
        {
            std::ostringstream ss;
            ss << std::fixed << std::setprecision(digits) << v;
            return ss.str();
        }

        ProtocolParams params_of(const ScenarioConfig& cfg)
        {
            ProtocolParams p;
            p.k = cfg.k_or_default();
            p.colors = cfg.colors_or_default();
            if (cfg.prior)
            {
                p.size_bound = cfg.prior->size_bound();
            }
            if (cfg.max_rounds)
            {
                p.max_rounds = *cfg.max_rounds;
            }
            return p;
        }

        std::string format_outputs(const ExecutionTrace& trace)
        {
            auto one = [](const Output& o) {
                if (o.bottom)
                {
                    return std::string("bot");
                }
                std::string s;
                for (std::size_t i = 0; i < o.value.size(); ++i)
                {
                    s += (i ? ":" : "") + std::to_string(o.value[i]);
                }
                return s;
            };
            const bool uniform = !trace.outputs.empty() &&
                                 std::all_of(trace.outputs.begin(), trace.outputs.end(),
                                             [&](const AgentOutput& o) { return o.output == trace.outputs.front().output; });
            if (uniform)
            {
                return one(trace.outputs.front().output);
            }
            std::string s;
            for (std::size_t i = 0; i < trace.outputs.size(); ++i)
            {
                s += (i ? "," : "") + one(trace.outputs[i].output);
            }
            return s;
        }

        Scenario control_of(Scenario s)
        {
            if (s.strategy == Strategy::Emulation)
            {
                s.search = false;
            }
            else
            {
                s.strategy = Strategy::Honest;
                s.d = 1;
            }
            return s;
        }
    }

    void cmd_run(const ScenarioConfig& cfg, std::ostream& out)
    {
        const Problem problem = require_problem(cfg);
        if (cfg.trials != 1)
        {
            throw SchemaError("invalid config:\n  config.trials: run executes exactly one trial");
        }
        if (cfg.format != OutputFormat::Json)
        {
            throw SchemaError("invalid config:\n  config.output.format: run writes json traces");
        }
        const ProtocolParams params = params_of(cfg);
        const Strategy strategy = cfg.adversary ? cfg.adversary->strategy : Strategy::Honest;
        const PriorSpec prior = cfg.prior.value_or(PriorSpec::unbounded());
        const NetworkTopology t = strategy == Strategy::Emulation && !cfg.topology
            ? emulation_topology(cfg.adversary->honest_side, params.k, splitmix64(cfg.seed ^ 0x70))
            : cfg.network(splitmix64(cfg.seed ^ 0x70));
        const std::size_t index = cfg.adversary ? cfg.adversary->cheater : 0;
        if (index >= t.size())
        {
            throw SchemaError("invalid config:\n  config.adversary.cheater: index outside the topology");
        }
        const NodeSpec& cheater = t.nodes()[index];
        const std::uint64_t pref = preferred_output(problem, cheater, params);
        const std::size_t d = cfg.adversary ? cfg.adversary->d : 1;

        ExecutionTrace trace;
        std::optional<int> cheater_utility;
        std::optional<bool> detected;
        std::string extra;
        switch (strategy)
        {
        case Strategy::Honest:
            trace = run_honest(problem, t, params, cfg.seed, true);
            break;
        case Strategy::KsForce:
        {
            auto r = run_ks_sybil(t, cheater.id, pref, d, params.k, prior, cfg.seed, true);
            trace = std::move(r.verdict.trace);
            cheater_utility = r.verdict.cheater_utility;
            detected = r.verdict.detected;
            extra = std::string(" forced=") + (r.forced ? "true" : "false");
            break;
        }
        case Strategy::LeDuplicate:
        {
            auto r = run_le_sybil(t, cheater.id, d, prior, cfg.seed, true);
            trace = std::move(r.trace);
            cheater_utility = r.cheater_utility;
            detected = r.detected;
            break;
        }
        case Strategy::AdaptiveDuplication:
        {
            auto r = run_adaptive_duplication(t, cheater.id, cfg.seed, std::nullopt, problem);
            trace = std::move(r.verdict.trace);
            cheater_utility = r.verdict.cheater_utility;
            detected = r.verdict.detected;
            extra = " d=" + std::to_string(r.d) + " n=" + std::to_string(r.n);
            break;
        }
        case Strategy::Emulation:
        {
            const AgentId hub = t.nodes()[index].id;
            auto r = run_emulation_attack(t, hub, pref, 3, params.k, prior, cfg.seed, true);
            trace = std::move(r.verdict.trace);
            cheater_utility = r.verdict.cheater_utility;
            detected = r.verdict.detected;
            extra = std::string(" flipped=") + (r.flipped ? "true" : "false");
            break;
        }
        }

        out << "legal=" << (trace.legality == Legality::Legal ? "true" : "false") << " output=" << format_outputs(trace)
            << " messages=" << trace.message_count << " rounds=" << trace.rounds_executed;
        if (cheater_utility)
        {
            out << " cheater_utility=" << *cheater_utility << " detected=" << (*detected ? "true" : "false") << extra;
        }
        out << "\n";
        if (cfg.output_path)
        {
            write_file(*cfg.output_path, trace_to_json(trace).dump(1) + "\n");
        }
    }

    void cmd_sweep(const ScenarioConfig& cfg, std::ostream& out)
    {
        const Problem problem = require_problem(cfg);
        if (cfg.trials < 100)
        {
            throw SchemaError("invalid config:\n  config.trials: sweep needs at least 100 trials");
        }
        std::vector<PriorSpec> priors = cfg.sweep && !cfg.sweep->priors.empty() ? cfg.sweep->priors
                                       : cfg.prior                              ? std::vector<PriorSpec>{*cfg.prior}
                                                                                : std::vector<PriorSpec>{};
        if (priors.empty())
        {
            throw SchemaError("invalid config:\n  config.prior: sweep needs a prior (or sweep.priors)");
        }
        for (const auto& p : priors)
        {
            if (!p.finite() && !cfg.ring_n && !cfg.topology)
            {
                throw SchemaError("invalid config:\n  config.prior: an unbounded prior needs a topology");
            }
        }
        const bool ks = problem == Problem::KnowledgeSharing;
        std::vector<std::uint64_t> ks_values = cfg.sweep && !cfg.sweep->ks.empty() ? cfg.sweep->ks
                                             : std::vector<std::uint64_t>{cfg.k_or_default()};
        std::vector<std::size_t> ds = cfg.sweep && !cfg.sweep->ds.empty()
            ? cfg.sweep->ds
            : std::vector<std::size_t>{cfg.adversary ? cfg.adversary->d : 1};
        if (!ks)
        {
            ks_values = {cfg.k_or_default()};
        }
        const Scenario base = cfg.scenario();

        struct Row
        {
            std::tuple<std::string, std::string, std::uint64_t, std::string, std::size_t> key;
            Scenario s;
        };
        std::vector<Row> rows;
        for (const auto& prior : priors)
        {
            for (std::uint64_t k : ks_values)
            {
                Scenario s = base;
                s.prior = prior;
                s.k = k;
                Scenario honest = control_of(s);
                rows.push_back({{problem_name(problem), describe(prior), ks ? k : 0, strategy_name(honest.strategy),
                                 honest.d},
                                honest});
                if (base.strategy == Strategy::Honest)
                {
                    continue;
                }
                for (std::size_t d : ds)
                {
                    Scenario a = s;
                    a.d = d;
                    rows.push_back({{problem_name(problem), describe(prior), ks ? k : 0, strategy_name(a.strategy), d}, a});
                }
            }
        }
        std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.key < b.key; });
        rows.erase(std::unique(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.key == b.key; }),
                   rows.end());

        const std::vector<std::string> header{"problem", "prior",  "alpha",        "beta",   "k",       "strategy",
                                              "d",       "trials", "exact_eu",     "empirical_eu", "radius", "verdict"};
        std::ostringstream csv;
        json doc = json::array();
        write_csv_row(csv, header);
        const RngStream root(cfg.seed);
        for (std::size_t i = 0; i < rows.size(); ++i)
        {
            const Scenario& s = rows[i].s;
            const Estimate e = empirical_eu(s, cfg.trials, root.substream(i).next_u64());
            const auto exact = exact_eu(s);
            std::string verdict = "n/a";
            const bool baseline = s.strategy == Strategy::Honest || (s.strategy == Strategy::Emulation && !s.search);
            if (baseline)
            {
                verdict = "baseline";
            }
            else if (const auto honest = exact_eu(control_of(s)); exact && honest)
            {
                verdict = verdict_name(compare_eu(*honest, *exact));
            }
            std::vector<std::string> fields{problem_name(s.problem),
                                            prior_kind_name(s.prior.kind),
                                            std::to_string(s.prior.alpha),
                                            s.prior.finite() ? std::to_string(s.prior.beta) : "",
                                            ks ? std::to_string(s.k) : "",
                                            strategy_name(s.strategy) + (s.strategy == Strategy::Emulation && !s.search ? "-control" : ""),
                                            std::to_string(s.d),
                                            std::to_string(e.trials),
                                            exact ? to_string(*exact) : "",
                                            fixed(e.mean),
                                            fixed(e.radius),
                                            verdict};
            write_csv_row(csv, fields);
            json obj;
            for (std::size_t c = 0; c < header.size(); ++c)
            {
                obj[header[c]] = fields[c];
            }
            doc.push_back(std::move(obj));
        }
        const std::string body = cfg.format == OutputFormat::Csv ? csv.str() : doc.dump(1) + "\n";
        if (cfg.output_path)
        {
            write_file(*cfg.output_path, body);
            out << "rows=" << rows.size() << " trials=" << cfg.trials << " written=" << cfg.output_path->string() << "\n";
        }
        else
        {
            out << body;
        }
    }

    void cmd_thresholds(const ScenarioConfig& cfg, std::ostream& out)
    {
        const auto rows = thresholds_report(cfg.ranges);
        const std::vector<std::string> header{"family", "k", "alpha", "parity", "max_beta", "closed_form", "match"};
        std::ostringstream csv;
        json doc = json::array();
        write_csv_row(csv, header);
        std::size_t mismatches = 0;
        for (const auto& r : rows)
        {
            mismatches += !r.match;
            std::vector<std::string> fields{r.family,
                                            r.k ? std::to_string(*r.k) : "",
                                            std::to_string(r.alpha),
                                            r.parity,
                                            format_bound(r.max_beta),
                                            format_bound(r.closed_form),
                                            r.match ? "true" : "false"};
            write_csv_row(csv, fields);
            doc.push_back({{"family", r.family},
                           {"k", r.k ? json(*r.k) : json(nullptr)},
                           {"alpha", r.alpha},
                           {"parity", r.parity},
                           {"max_beta", format_bound(r.max_beta)},
                           {"closed_form", format_bound(r.closed_form)},
                           {"match", r.match}});
        }
        const std::string body = cfg.format == OutputFormat::Csv ? csv.str() : doc.dump(1) + "\n";
        if (cfg.output_path)
        {
            write_file(*cfg.output_path, body);
        }
        else
        {
            out << body;
        }
        out << "rows=" << rows.size() << " divergent=" << mismatches << "\n";
    }

    void cmd_attack_demo(const ScenarioConfig& cfg, std::ostream& out)
    {
        if (!cfg.adversary || cfg.adversary->strategy == Strategy::Honest)
        {
            throw SchemaError("invalid config:\n  config.adversary: attack-demo needs an adversary strategy");
        }
        const Problem problem = require_problem(cfg);
        const Strategy strategy = cfg.adversary->strategy;
        json summary{{"attack", strategy_name(strategy)}, {"problem", problem_name(problem)}, {"trials", cfg.trials}};

        if (strategy == Strategy::AdaptiveDuplication)
        {
            if (!cfg.ring_n && !(cfg.topology && cfg.topology->is_ring()))
            {
                throw SchemaError("invalid config:\n  config.topology: adaptive duplication runs on a ring");
            }
            std::size_t min_d = SIZE_MAX, control_max_d = 0, n = 0;
            bool all_at_least_n = true, control_below_n = true, consistent = true;
            std::size_t wins = 0, control_wins = 0;
            const RngStream root(cfg.seed);
            for (std::size_t i = 0; i < cfg.trials; ++i)
            {
                const std::uint64_t s = root.substream(i).next_u64();
                const NetworkTopology t = cfg.network(splitmix64(s ^ 0x70));
                const AgentId cheater = t.nodes()[cfg.adversary->cheater].id;
                const auto r = run_adaptive_duplication(t, cheater, s, std::nullopt, problem);
                const Round early = std::max<Round>(1, r.commit_round - 1);
                const auto c = run_adaptive_duplication(t, cheater, s, early, problem);
                n = r.n;
                min_d = std::min(min_d, r.d);
                control_max_d = std::max(control_max_d, c.d);
                all_at_least_n = all_at_least_n && r.d >= r.n;
                control_below_n = control_below_n && c.d < c.n;
                consistent = consistent && r.consistent && c.consistent;
                wins += r.verdict.cheater_utility;
                control_wins += c.verdict.cheater_utility;
                if (i == 0)
                {
                    out << "run 0: n=" << r.n << " fresh ids on both edges until round " << r.commit_round
                        << ", committed d=" << r.d << " (n'=" << r.verdict.n_prime << ")\n";
                    out << "control 0: committed at round " << early << ", d=" << c.d << "\n";
                }
            }
            const Estimate e = make_estimate(wins, cfg.trials);
            const Estimate ce = make_estimate(control_wins, cfg.trials);
            out << "attack=adaptive-duplication runs=" << cfg.trials << " n=" << n << " min_d=" << min_d
                << " d_at_least_n=" << (all_at_least_n ? "true" : "false") << " control_max_d=" << control_max_d
                << " control_below_n=" << (control_below_n ? "true" : "false")
                << " consistent=" << (consistent ? "true" : "false") << "\n";
            out << "cheater=" << fixed(e.mean, 4) << " control=" << fixed(ce.mean, 4)
                << " gap=" << fixed(e.mean - ce.mean, 4) << "\n";
            summary.update({{"n", n}, {"min_d", min_d}, {"d_at_least_n", all_at_least_n}, {"control_max_d", control_max_d},
                            {"control_below_n", control_below_n}, {"consistent", consistent},
                            {"cheater_eu", e.mean}, {"control_eu", ce.mean}});
        }
        else
        {
            Scenario s = cfg.scenario();
            if (strategy != Strategy::Emulation && !s.prior.finite() && !s.ring_n && !s.topology)
            {
                throw SchemaError("invalid config:\n  config.topology: an unbounded prior needs a topology");
            }
            const Scenario control = control_of(s);
            const RngStream root(cfg.seed);
            const Estimate e = empirical_eu(s, cfg.trials, root.substream(0).next_u64());
            const Estimate ce = empirical_eu(control, cfg.trials, root.substream(1).next_u64());
            const auto exact = exact_eu(s);
            const auto control_exact = exact_eu(control);
            out << "attack=" << strategy_name(strategy) << " trials=" << cfg.trials << " d=" << s.d;
            if (strategy == Strategy::Emulation)
            {
                out << " |D|=" << s.honest_side << " |E'|=3";
            }
            out << "\n";
            out << "cheater=" << fixed(e.mean, 4) << " +/- " << fixed(e.radius, 4);
            if (exact)
            {
                out << " (exact " << to_string(*exact) << ")";
            }
            out << "\ncontrol=" << fixed(ce.mean, 4) << " +/- " << fixed(ce.radius, 4);
            if (control_exact)
            {
                out << " (exact " << to_string(*control_exact) << ")";
            }
            out << "\ngap=" << fixed(e.mean - ce.mean, 4) << "\n";
            summary.update({{"d", s.d}, {"cheater_eu", e.mean}, {"cheater_radius", e.radius}, {"control_eu", ce.mean},
                            {"control_radius", ce.radius}, {"exact_eu", exact ? json(to_string(*exact)) : json(nullptr)},
                            {"control_exact_eu", control_exact ? json(to_string(*control_exact)) : json(nullptr)}});
        }
        if (cfg.output_path)
        {
            write_file(*cfg.output_path, summary.dump(1) + "\n");
        }
    }

    int run_command(const std::string& command, const std::filesystem::path& config, const Overrides& o,
                    std::ostream& out, std::ostream& err)
    {
        try
        {
            ScenarioConfig cfg = load_config(config);
            apply_overrides(cfg, o);
            if (command == "run")
            {
                cmd_run(cfg, out);
            }
            else if (command == "sweep")
            {
                cmd_sweep(cfg, out);
            }
            else if (command == "thresholds")
            {
                cmd_thresholds(cfg, out);
            }
            else if (command == "attack-demo")
            {
                cmd_attack_demo(cfg, out);
            }
            else
            {
                err << "unknown command: " << command << "\n";
                return 1;
            }
            return 0;
        }
        catch (const SchemaError& e)
        {
            err << e.what() << "\n";
            return 2;
        }
        catch (const RunawayProtocol& e)
        {
            err << "runaway protocol: " << e.what() << "\n";
            return 3;
        }
        catch (const std::exception& e)
        {
            err << "error: " << e.what() << "\n";
            return 1;
        }
    }
}
