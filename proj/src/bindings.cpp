#include "ras/adversary/adaptive.hpp"
#include "ras/adversary/duplication.hpp"
#include "ras/adversary/ks_sybil.hpp"
#include "ras/analysis/equilibrium.hpp"
#include "ras/analysis/montecarlo.hpp"
#include "ras/analysis/thresholds.hpp"
#include "ras/cli/commands.hpp"
#include "ras/cli/trace_json.hpp"
#include "ras/error.hpp"
#include "ras/protocols/registry.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

namespace py = pybind11;
using namespace ras;

namespace
{
    py::object fraction(const Rational& r) { return py::module_::import("fractions").attr("Fraction")(to_string(r)); }

    py::object trace_dict(const ExecutionTrace& t)
    {
        return py::module_::import("json").attr("loads")(trace_to_json(t).dump());
    }

    py::dict verdict_dict(const CheaterVerdict& v)
    {
        py::dict d;
        d["detected"] = v.detected;
        d["cheater_utility"] = v.cheater_utility;
        d["n_prime"] = v.n_prime;
        d["trace"] = trace_dict(v.trace);
        return d;
    }

    py::dict report_dict(const EquilibriumReport& r)
    {
        py::dict d;
        d["problem"] = problem_name(r.problem);
        d["prior"] = describe(r.prior);
        d["k"] = r.k ? py::cast(*r.k) : py::none();
        d["honest_eu"] = fraction(r.honest_eu);
        d["best_deviation_eu"] = fraction(r.best_deviation_eu);
        d["best_d"] = r.best_d;
        d["verdict"] = verdict_name(r.verdict);
        d["closed_form"] = r.closed_form ? py::cast(verdict_name(*r.closed_form)) : py::none();
        d["divergence"] = r.divergence;
        return d;
    }

    py::dict estimate_dict(const Estimate& e)
    {
        py::dict d;
        d["trials"] = e.trials;
        d["successes"] = e.successes;
        d["mean"] = e.mean;
        d["radius"] = e.radius;
        return d;
    }

    Scenario make_scenario(const std::string& problem, const PriorSpec& prior, const std::string& strategy,
                           std::uint64_t k, std::size_t d, std::uint64_t colors, std::optional<std::size_t> ring_n)
    {
        Scenario s;
        s.problem = problem_from_name(problem);
        s.prior = prior;
        s.strategy = strategy_from_name(strategy);
        s.k = k;
        s.d = d;
        s.colors = colors;
        s.ring_n = ring_n;
        return s;
    }
}

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Synchronous simulator and exact analysis for rational agents under Sybil duplication";

    // Translators run newest first, so the base goes in before the subclasses.
    const auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
    py::register_exception<SchemaError>(m, "SchemaError", base);
    py::register_exception<InvalidTopology>(m, "InvalidTopology", base);
    py::register_exception<InvalidScheme>(m, "InvalidScheme", base);
    py::register_exception<UnsupportedQuery>(m, "UnsupportedQuery", base);
    py::register_exception<RunawayProtocol>(m, "RunawayProtocol", base);

    py::class_<PriorSpec>(m, "Prior")
        .def_static("uniform", &PriorSpec::uniform, py::arg("alpha"), py::arg("beta"))
        .def_static("geometric", &PriorSpec::geometric, py::arg("alpha"), py::arg("beta"))
        .def_static("point", &PriorSpec::point, py::arg("n"))
        .def_static("unbounded", &PriorSpec::unbounded, py::arg("alpha") = 1)
        .def_readonly("alpha", &PriorSpec::alpha)
        .def_readonly("beta", &PriorSpec::beta)
        .def("pmf", [](const PriorSpec& p, std::int64_t t) { return fraction(pmf(p, t)); })
        .def("cdf", [](const PriorSpec& p, std::int64_t t) { return fraction(cdf(p, t)); })
        .def("__repr__", [](const PriorSpec& p) { return describe(p); });

    py::class_<NetworkTopology>(m, "Topology")
        .def("__len__", &NetworkTopology::size)
        .def_property_readonly("ids", [](const NetworkTopology& t) {
            std::vector<AgentId> ids;
            for (const auto& n : t.nodes())
            {
                ids.push_back(n.id);
            }
            return ids;
        })
        .def_property_readonly("edges", [](const NetworkTopology& t) {
            return std::vector<Edge>(t.edges().begin(), t.edges().end());
        })
        .def("input", [](const NetworkTopology& t, AgentId a) { return t.node(a).input; })
        .def("preference", [](const NetworkTopology& t, AgentId a) { return t.node(a).preference; })
        .def("neighbors", &NetworkTopology::neighbors)
        .def("is_ring", &NetworkTopology::is_ring);

    m.def(
        "build_ring",
        [](std::size_t n, std::uint64_t seed, std::uint64_t input_domain, std::uint64_t preference_domain) {
            RingOptions o;
            o.input_domain = input_domain;
            o.preference_domain = preference_domain;
            return build_ring(n, seed, o);
        },
        py::arg("n"), py::arg("seed") = 0, py::arg("input_domain") = 2, py::arg("preference_domain") = 2);
    m.def(
        "random_two_connected",
        [](std::size_t n, double p, std::uint64_t seed, std::uint64_t preference_domain) {
            RingOptions o;
            o.preference_domain = preference_domain;
            return random_two_connected(n, p, seed, o);
        },
        py::arg("n"), py::arg("chord_probability") = 0.3, py::arg("seed") = 0, py::arg("preference_domain") = 3);
    m.def("verify_two_connected", &verify_two_connected);

    m.def(
        "run_honest",
        [](const std::string& problem, const NetworkTopology& t, std::uint64_t seed, std::uint64_t k,
           std::uint64_t colors, bool record) {
            ProtocolParams p;
            p.k = k;
            p.colors = colors;
            return trace_dict(run_honest(problem_from_name(problem), t, p, seed, record));
        },
        py::arg("problem"), py::arg("topology"), py::arg("seed") = 0, py::arg("k") = 2, py::arg("colors") = 3,
        py::arg("record") = false);

    m.def(
        "run_ks_sybil",
        [](const NetworkTopology& t, AgentId cheater, std::uint64_t preference, std::size_t d, std::uint64_t k,
           const PriorSpec& prior, std::uint64_t seed) {
            const auto r = run_ks_sybil(t, cheater, preference, d, k, prior, seed);
            auto out = verdict_dict(r.verdict);
            out["forced"] = r.forced;
            return out;
        },
        py::arg("topology"), py::arg("cheater"), py::arg("preference"), py::arg("d"), py::arg("k"),
        py::arg("prior"), py::arg("seed") = 0);
    m.def(
        "run_le_sybil",
        [](const NetworkTopology& t, AgentId cheater, std::size_t d, const PriorSpec& prior, std::uint64_t seed) {
            return verdict_dict(run_le_sybil(t, cheater, d, prior, seed));
        },
        py::arg("topology"), py::arg("cheater"), py::arg("d"), py::arg("prior"), py::arg("seed") = 0);
    m.def(
        "run_adaptive_duplication",
        [](const NetworkTopology& t, AgentId cheater, std::uint64_t seed, const std::string& problem) {
            const auto r = run_adaptive_duplication(t, cheater, seed, std::nullopt, problem_from_name(problem));
            auto out = verdict_dict(r.verdict);
            out["d"] = r.d;
            out["n"] = r.n;
            out["commit_round"] = r.commit_round;
            return out;
        },
        py::arg("topology"), py::arg("cheater"), py::arg("seed") = 0, py::arg("problem") = "ks");

    m.def(
        "ks_cheater_eu",
        [](const PriorSpec& p, std::uint64_t k, std::optional<std::size_t> d) {
            return fraction(d ? ks_cheater_eu_for_d(p, k, *d) : ks_cheater_eu(p, k));
        },
        py::arg("prior"), py::arg("k"), py::arg("d") = py::none());
    m.def(
        "best_duplication",
        [](const PriorSpec& p, std::uint64_t k) {
            const auto b = best_duplication(p, k);
            return py::make_tuple(b.d, fraction(b.eu));
        },
        py::arg("prior"), py::arg("k"));
    m.def(
        "ks_equilibrium",
        [](const PriorSpec& p, std::optional<std::uint64_t> k) {
            return report_dict(k ? ks_equilibrium(p, *k) : ks_equilibrium_any_k(p));
        },
        py::arg("prior"), py::arg("k") = py::none());
    m.def("le_equilibrium", [](const PriorSpec& p) { return report_dict(le_equilibrium(p)); }, py::arg("prior"));
    m.def("le_cheater_eu", [](const PriorSpec& p, std::size_t d) { return fraction(le_cheater_eu(p, d)); },
          py::arg("prior"), py::arg("d") = 2);
    m.def("le_honest_eu", [](const PriorSpec& p) { return fraction(le_honest_eu(p)); }, py::arg("prior"));
    m.def(
        "ring_coloring_bound",
        [](std::uint64_t colors, std::int64_t n) { return fraction(ring_coloring_honest_eu_bound(colors, n)); },
        py::arg("colors"), py::arg("n"));

    m.def(
        "thresholds_report",
        [](std::int64_t alpha_min, std::int64_t alpha_max, std::uint64_t k_min, std::uint64_t k_max) {
            py::list rows;
            for (const auto& r : thresholds_report({alpha_min, alpha_max, k_min, k_max}))
            {
                py::dict d;
                d["family"] = r.family;
                d["k"] = r.k ? py::cast(*r.k) : py::none();
                d["alpha"] = r.alpha;
                d["parity"] = r.parity;
                d["max_beta"] = r.max_beta ? py::cast(*r.max_beta) : py::none();
                d["closed_form"] = r.closed_form ? py::cast(*r.closed_form) : py::none();
                d["match"] = r.match;
                rows.append(d);
            }
            return rows;
        },
        py::arg("alpha_min") = 2, py::arg("alpha_max") = 16, py::arg("k_min") = 2, py::arg("k_max") = 8);

    m.def(
        "empirical_eu",
        [](const std::string& problem, const PriorSpec& prior, const std::string& strategy, std::uint64_t k,
           std::size_t d, std::size_t trials, std::uint64_t seed, std::uint64_t colors,
           std::optional<std::size_t> ring_n) {
            const auto s = make_scenario(problem, prior, strategy, k, d, colors, ring_n);
            Estimate e;
            {
                py::gil_scoped_release release;
                e = empirical_eu(s, trials, seed);
            }
            return estimate_dict(e);
        },
        py::arg("problem"), py::arg("prior"), py::arg("strategy") = "honest", py::arg("k") = 2, py::arg("d") = 1,
        py::arg("trials") = 1000, py::arg("seed") = 0, py::arg("colors") = 3, py::arg("ring_n") = py::none());
    m.def(
        "exact_eu",
        [](const std::string& problem, const PriorSpec& prior, const std::string& strategy, std::uint64_t k,
           std::size_t d, std::optional<std::size_t> ring_n) -> py::object {
            const auto e = exact_eu(make_scenario(problem, prior, strategy, k, d, 3, ring_n));
            return e ? fraction(*e) : py::none();
        },
        py::arg("problem"), py::arg("prior"), py::arg("strategy") = "honest", py::arg("k") = 2, py::arg("d") = 1,
        py::arg("ring_n") = py::none());

    m.def(
        "run_command",
        [](const std::string& command, const std::filesystem::path& config, std::optional<std::uint64_t> seed,
           std::optional<std::size_t> trials, std::optional<std::filesystem::path> out) {
            std::ostringstream o;
            std::ostringstream e;
            const int code = run_command(command, config, {seed, trials, out}, o, e);
            return py::make_tuple(code, o.str(), e.str());
        },
        py::arg("command"), py::arg("config"), py::arg("seed") = py::none(), py::arg("trials") = py::none(),
        py::arg("out") = py::none());
}
