#include "ras/cli/commands.hpp"
#include "ras/cli/csv.hpp"
#include "ras/cli/trace_json.hpp"
#include "ras/error.hpp"
#include "ras/protocols/registry.hpp"

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace ras;
namespace fs = std::filesystem;

namespace
{
    struct Scratch
    {
        fs::path dir;

        Scratch()
        {
            dir = fs::temp_directory_path() / ("ras_cli_" + std::to_string(std::random_device{}()));
            fs::create_directories(dir);
        }
        ~Scratch() { fs::remove_all(dir); }

        fs::path write(const std::string& name, const std::string& text) const
        {
            std::ofstream(dir / name, std::ios::binary) << text;
            return dir / name;
        }
    };

    std::string slurp(const fs::path& p)
    {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    struct Outcome
    {
        int code;
        std::string out;
        std::string err;
    };

    Outcome run(const std::string& cmd, const fs::path& cfg, const Overrides& o = {})
    {
        std::ostringstream out;
        std::ostringstream err;
        const int code = run_command(cmd, cfg, o, out, err);
        return {code, out.str(), err.str()};
    }

    std::vector<std::string> lines(const std::string& text)
    {
        std::vector<std::string> out;
        std::size_t at = 0;
        while (at < text.size())
        {
            const auto end = text.find("\r\n", at);
            REQUIRE(end != std::string::npos);
            out.push_back(text.substr(at, end - at));
            at = end + 2;
        }
        return out;
    }
}

TEST_CASE("schema errors are collected")
{
    const auto expect = [](const std::string& text, const std::string& needle) {
        try
        {
            parse_config(text);
            FAIL("accepted: " << text);
        }
        catch (const SchemaError& e)
        {
            CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos, e.what());
        }
    };
    expect(R"({"problem":"ks","topology":{"kind":"ring","n":5}})", "config.k: required for ks");
    expect(R"({"problem":"ks","k":2,"colour":3})", "unknown field \"colour\"");
    expect(R"({"problem":"leader-election","k":2})", "config.k");
    expect(R"({"problem":"ks","k":2,"colors":3})", "config.colors");
    expect(R"({"problem":"ks","k":2,"prior":{"kind":"uniform","alpha":5,"beta":3}})", "beta must be at least alpha");
    expect(R"({"problem":"ks","k":2,"prior":{"kind":"zipf"}})", "unknown prior kind");
    expect(R"({"problem":"ks","k":2,"topology":{"kind":"ring","n":2}})", "config.topology");
    expect(R"({"problem":"ks","k":2,"adversary":{"strategy":"le-duplicate","d":2}})", "config.adversary");
    expect(R"([1,2])", "config");
    expect("{not json", "");
    try
    {
        parse_config(R"({"problem":"ks","colour":3,"trials":0})");
        FAIL("accepted");
    }
    catch (const SchemaError& e)
    {
        const std::string msg = e.what();
        CHECK(msg.find("colour") != std::string::npos);
        CHECK(msg.find("config.k") != std::string::npos);
        CHECK(msg.find("trials") != std::string::npos);
    }
}

TEST_CASE("valid configs parse")
{
    const auto cfg = parse_config(R"({"problem":"ks","k":3,"topology":{"kind":"ring","n":6},
        "prior":{"kind":"geometric","alpha":3,"beta":6},"adversary":{"strategy":"ks-force","d":4},
        "trials":500,"seed":9})");
    CHECK(cfg.problem == Problem::KnowledgeSharing);
    CHECK(cfg.ring_n == 6);
    CHECK(cfg.k_or_default() == 3);
    CHECK(cfg.trials == 500);
    CHECK(cfg.seed == 9);
    const auto s = cfg.scenario();
    CHECK(s.strategy == Strategy::KsForce);
    CHECK(s.d == 4);
    CHECK(describe(s.prior) == "geometric[3,6]");
    const auto net = cfg.network(1);
    CHECK(net.size() == 6);
    CHECK(net.is_ring());
}

TEST_CASE("topology files")
{
    Scratch tmp;
    tmp.write("g.json", R"({"nodes":[{"id":1,"input":1},{"id":2},{"id":3},{"id":4}],
                           "edges":[[1,2],[2,3],[3,4],[4,1],[1,3]]})");
    const auto cfg = parse_config(R"({"problem":"coloring-witness","colors":3,
        "topology":{"kind":"file","path":"g.json"}})", tmp.dir);
    REQUIRE(cfg.topology);
    CHECK(cfg.topology->size() == 4);
    CHECK(cfg.topology->edges().size() == 5);
    CHECK(cfg.topology->node(1).input == 1);
    CHECK_THROWS_AS(parse_topology(R"({"nodes":[{"id":1}],"edges":[[1,7]]})"), Error);
    CHECK_THROWS_AS(parse_config(R"({"problem":"ks","k":2,"topology":{"kind":"file","path":"missing.json"}})", tmp.dir),
                    SchemaError);
}

TEST_CASE("run: ks ring summary and trace")
{
    Scratch tmp;
    const auto trace_path = tmp.dir / "trace.json";
    const auto cfg = tmp.write("ks.json", R"({"problem":"ks","k":2,"topology":{"kind":"ring","n":5},"seed":3,
        "output":{"path":")" + trace_path.generic_string() + R"("}})");
    const auto r = run("run", cfg);
    CHECK(r.code == 0);
    CHECK(r.out.rfind("legal=true output=", 0) == 0);
    CHECK(r.out.find(" messages=") != std::string::npos);
    const auto doc = nlohmann::json::parse(slurp(trace_path));
    CHECK(doc["legality"] == "legal");
    CHECK(doc["outputs"].size() == 5);
    CHECK(doc["message_count"].get<std::size_t>() > 0);
    CHECK(r.out.find("messages=" + std::to_string(doc["message_count"].get<std::size_t>())) != std::string::npos);

    const auto bytes = slurp(trace_path);
    const auto again = run("run", cfg);
    CHECK(again.out == r.out);
    CHECK(slurp(trace_path) == bytes);
}

TEST_CASE("run: partition on an odd ring succeeds with an erroneous outcome")
{
    Scratch tmp;
    const auto r = run("run", tmp.write("p.json", R"({"problem":"partition","topology":{"kind":"ring","n":5}})"));
    CHECK(r.code == 0);
    CHECK(r.out.rfind("legal=false", 0) == 0);
    CHECK(r.out.find("bot") != std::string::npos);
}

TEST_CASE("exit codes")
{
    Scratch tmp;
    CHECK(run("run", tmp.write("a.json", R"({"problem":"ks","topology":{"kind":"ring","n":5}})")).code == 2);
    const auto bad = run("run", tmp.write("b.json", R"({"problem":"ks","k":2,"oops":1})"));
    CHECK(bad.code == 2);
    CHECK(bad.err.find("oops") != std::string::npos);
    CHECK(run("run", tmp.dir / "absent.json").code == 2);
    const auto runaway =
        run("run", tmp.write("c.json", R"({"problem":"ks","k":2,"topology":{"kind":"ring","n":5},"max_rounds":1})"));
    CHECK(runaway.code == 3);
    CHECK(run("sweep", tmp.write("d.json", R"({"problem":"ks","k":2,"trials":5})")).code == 2);
    CHECK(run("run", tmp.write("e.json", R"({"problem":"ks","k":2,"trials":5})")).code == 2);
    CHECK(run("launch", tmp.write("f.json", R"({"problem":"ks","k":2})")).code != 0);
}

TEST_CASE("trace json round trip")
{
    for (Problem p : {Problem::KnowledgeSharing, Problem::LeaderElection, Problem::Partition, Problem::ColoringRing})
    {
        RingOptions o;
        o.input_domain = 3;
        o.preference_domain = 3;
        const auto t = build_ring(p == Problem::Partition ? 5 : 6, 17, o);
        ProtocolParams params;
        params.k = 3;
        const auto trace = run_honest(p, t, params, 17, true);
        const auto doc = trace_to_json(trace);
        const auto back = trace_from_json(doc);
        CHECK(trace_to_json(back) == doc);
        CHECK(back.message_count == trace.message_count);
        CHECK(back.outputs.size() == trace.outputs.size());
        CHECK(back.legality == trace.legality);
    }
    CHECK_THROWS_AS(trace_from_json(nlohmann::json::parse(R"({"rounds":3})")), SchemaError);
}

TEST_CASE("csv quoting")
{
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_field("two\nlines") == "\"two\nlines\"");
    CHECK(csv_field("") == "");
    std::ostringstream out;
    write_csv_row(out, {"x", "y,z", "1/3"});
    CHECK(out.str() == "x,\"y,z\",1/3\r\n");
}

TEST_CASE("sweep: sorted rows, baselines, exact rationals, byte-identical reruns")
{
    Scratch tmp;
    const auto csv = tmp.dir / "s.csv";
    const auto cfg = tmp.write("s.json", R"({"problem":"ks","adversary":{"strategy":"ks-force","d":4},
        "k":2,"prior":{"kind":"geometric","alpha":3,"beta":6},"trials":3000,"seed":5,
        "sweep":{"priors":[{"kind":"uniform","alpha":3,"beta":6},{"kind":"geometric","alpha":3,"beta":6}],"k":[3,2],"d":[4,1]},
        "output":{"path":")" + csv.generic_string() + R"(","format":"csv"}})");
    const auto r = run("sweep", cfg);
    REQUIRE(r.code == 0);
    const auto first = slurp(csv);
    const auto rows = lines(first);
    CHECK(rows.front() == "problem,prior,alpha,beta,k,strategy,d,trials,exact_eu,empirical_eu,radius,verdict");
    std::vector<std::string> body(rows.begin() + 1, rows.end());
    using Key = std::tuple<std::string, std::string, unsigned long, std::string, unsigned long>;
    std::vector<Key> keys;
    std::size_t baselines = 0;
    bool geo_row = false;
    for (const auto& line : body)
    {
        std::vector<std::string> f;
        std::stringstream ss(line);
        for (std::string x; std::getline(ss, x, ',');)
        {
            f.push_back(x);
        }
        REQUIRE(f.size() == 12);
        keys.emplace_back(f[0], f[1] + "[" + f[2] + "," + f[3] + "]", std::stoul(f[4]), f[5], std::stoul(f[6]));
        if (f[5] == "honest")
        {
            ++baselines;
            CHECK(f[11] == "baseline");
            CHECK(f[8] == "1/" + f[4]);
        }
        if (f[1] == "geometric" && f[4] == "2" && f[5] == "ks-force" && f[6] == "4")
        {
            geo_row = true;
            CHECK(f[8] == "33/64");
            CHECK(f[11] == "IncentiveToCheat");
        }
    }
    CHECK(std::is_sorted(keys.begin(), keys.end()));
    CHECK(keys.size() == 12);
    CHECK(baselines == 4);
    CHECK(geo_row);
    CHECK(run("sweep", cfg).out == r.out);
    CHECK(slurp(csv) == first);
    Overrides o;
    o.seed = 6;
    run("sweep", cfg, o);
    CHECK(slurp(csv) != first);
}

TEST_CASE("sweep: geometric ks-force beats the baseline")
{
    Scratch tmp;
    const auto csv = tmp.dir / "g.csv";
    const auto r = run("sweep", tmp.write("g.json", R"({"problem":"ks","k":2,
        "prior":{"kind":"geometric","alpha":3,"beta":6},"adversary":{"strategy":"ks-force","d":4},
        "trials":30000,"seed":5,"output":{"path":")" + csv.generic_string() + R"(","format":"csv"}})"));
    REQUIRE(r.code == 0);
    const auto rows = lines(slurp(csv));
    REQUIRE(rows.size() == 3);
    std::vector<std::string> f;
    std::stringstream ss(rows[2]);
    for (std::string x; std::getline(ss, x, ',');)
    {
        f.push_back(x);
    }
    CHECK(f[8] == "33/64");
    CHECK(std::stod(f[9]) > 0.5 + std::stod(f[10]));
}

TEST_CASE("sweep: leader election row")
{
    Scratch tmp;
    const auto csv = tmp.dir / "le.csv";
    const auto r = run("sweep", tmp.write("le.json", R"({"problem":"leader-election",
        "prior":{"kind":"uniform","alpha":3,"beta":4},"adversary":{"strategy":"le-duplicate","d":2},
        "trials":4000,"seed":2,"output":{"path":")" + csv.generic_string() + R"(","format":"csv"}})"));
    REQUIRE(r.code == 0);
    const auto rows = lines(slurp(csv));
    REQUIRE(rows.size() == 3);
    CHECK(rows[1].find(",honest,1,4000,7/24,") != std::string::npos);
    CHECK(rows[2].find(",le-duplicate,2,4000,1/4,") != std::string::npos);
}

TEST_CASE("thresholds command")
{
    Scratch tmp;
    const auto csv = tmp.dir / "t.csv";
    const auto r = run("thresholds", tmp.write("t.json", R"({"ranges":{"alpha_min":2,"alpha_max":5,"k_min":2,"k_max":4},
        "output":{"path":")" + csv.generic_string() + R"(","format":"csv"}})"));
    REQUIRE(r.code == 0);
    const auto rows = lines(slurp(csv));
    CHECK(rows.front() == "family,k,alpha,parity,max_beta,closed_form,match");
    CHECK(std::find(rows.begin(), rows.end(), "ks-uniform,3,4,odd,13,13,true") != rows.end());
    CHECK(std::find(rows.begin(), rows.end(), "ks-uniform,3,4,even,12,12,true") != rows.end());
    CHECK(std::find(rows.begin(), rows.end(), "ks-geometric,4,5,all,9,9,true") != rows.end());
    CHECK(std::find(rows.begin(), rows.end(), "le-uniform,,5,all,6,6,true") != rows.end());
    CHECK(std::find(rows.begin(), rows.end(), "le-geometric,,2,all,3,2,false") != rows.end());
    CHECK(r.out.find("rows=" + std::to_string(rows.size() - 1)) != std::string::npos);
    CHECK(r.out.find("divergent=1") != std::string::npos);
}

TEST_CASE("attack demos")
{
    Scratch tmp;
    const auto adaptive = run("attack-demo", tmp.write("a.json", R"({"problem":"ks","k":2,
        "topology":{"kind":"ring","n":6},"adversary":{"strategy":"adaptive-duplication"},"seed":4})"));
    REQUIRE(adaptive.code == 0);
    CHECK(adaptive.out.find("d_at_least_n=true") != std::string::npos);
    CHECK(adaptive.out.find("control_below_n=true") != std::string::npos);

    const auto emu = run("attack-demo", tmp.write("e.json", R"({"problem":"ks","k":2,
        "adversary":{"strategy":"emulation","honest_side":3},"trials":400,"seed":4})"));
    REQUIRE(emu.code == 0);
    CHECK(emu.out.find("cheater=") != std::string::npos);
    CHECK(emu.out.find("control=") != std::string::npos);

    const auto caught = run("attack-demo", tmp.write("f.json", R"({"problem":"ks","k":2,
        "topology":{"kind":"ring","n":4},"prior":{"kind":"uniform","alpha":3,"beta":7},
        "adversary":{"strategy":"ks-force","d":5},"trials":100,"seed":4})"));
    REQUIRE(caught.code == 0);
    CHECK(caught.out.find("cheater=0.0000 ") != std::string::npos);
}

TEST_CASE("the ras binary")
{
    const char* bin = std::getenv("RAS_BIN");
    if (!bin)
    {
        MESSAGE("RAS_BIN not set");
        return;
    }
    Scratch tmp;
    const auto ok = tmp.write("ok.json", R"({"problem":"ks","k":2,"topology":{"kind":"ring","n":4}})");
    const auto bad = tmp.write("bad.json", R"({"problem":"ks"})");
    const auto loop = tmp.write("loop.json", R"({"problem":"ks","k":2,"topology":{"kind":"ring","n":4},"max_rounds":2})");
    const auto status = [&](const std::string& args) {
        const int raw = std::system((std::string(bin) + " " + args + " > /dev/null 2>&1").c_str());
        return WEXITSTATUS(raw);
    };
    CHECK(status("run --config " + ok.string()) == 0);
    CHECK(status("run --config " + ok.string() + " --seed 12") == 0);
    CHECK(status("run --config " + bad.string()) == 2);
    CHECK(status("run --config " + loop.string()) == 3);
    CHECK(status("run --config " + ok.string() + " --trials 0") == 2);
    CHECK(status("explode --config " + ok.string()) == 2);
}
