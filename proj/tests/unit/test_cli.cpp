#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sfi_cli/config.hpp"
#include "sfi_cli/run.hpp"

using namespace sfi;
using namespace sfi::cli;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "sfi");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

Result execute(const RunConfig& cfg) {
    std::ostringstream out, err;
    const int code = run(cfg, out, err);
    return {code, out.str(), err.str()};
}

RunConfig parsed(const std::string& text) {
    ConfigResult r = parse_config(text);
    if (!r.ok()) FAIL(format_issues(r.issues));
    return *r.config;
}

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "sfi_cli_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("minimal document takes the documented defaults") {
    const RunConfig c = parsed(R"({"task": "momentum-map", "laser": {"omega": 0.1, "up": 0.3}})");
    CHECK(c.task == Task::momentum_map);
    CHECK(c.tolerances.tail_eps == 1e-8);
    CHECK(c.tolerances.threshold == 10.0);
    CHECK_FALSE(c.momentum_map.kernel_width.has_value());
    CHECK(c.atom.eb == 0.5);
    CHECK(c.output.path == "-");

    RunConfig small = c;
    small.momentum_map.n_par = 5;
    small.momentum_map.n_perp = 5;
    small.output.format = Format::json;
    const Result r = execute(small);
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["meta"]["kernel_width"].get<double>() == doctest::Approx(0.05));
}

TEST_CASE("negative omega gives one report naming omega") {
    const ConfigResult r = parse_config(R"({"task": "params", "laser": {"omega": -0.1, "up": 0.3}})");
    CHECK_FALSE(r.ok());
    REQUIRE(r.issues.size() == 1);
    CHECK(r.issues[0].path == "laser.omega");
    CHECK(r.issues[0].message.find("omega") != std::string::npos);
}

TEST_CASE("problems are collected, not reported one at a time") {
    const ConfigResult r = parse_config(
        R"({"task": "params", "laser": {"omega": -0.1, "up": 0.3, "colour": "red"}, "atom": {"eb": -1},
            "tolerances": {"tail_eps": 2}})");
    CHECK(r.issues.size() == 4);
}

TEST_CASE("unknown keys are rejected with a suggestion") {
    const ConfigResult r = parse_config(R"({"task": "params", "laser": {"omega_eV": 1.5, "up": 0.3}})");
    CHECK_FALSE(r.ok());
    bool found = false;
    for (const auto& i : r.issues)
        if (i.path == "laser.omega_eV") {
            found = true;
            CHECK(i.message.find("\"omega\" (a.u.)") != std::string::npos);
        }
    CHECK(found);

    const ConfigResult top = parse_config(R"({"task": "params", "omega": 0.1})");
    REQUIRE_FALSE(top.issues.empty());
    CHECK(top.issues[0].message.find("laser.omega") != std::string::npos);
}

TEST_CASE("syntax errors carry line and column") {
    try {
        parse_config("{\"task\": \"params\",\n  \"laser\": {\"omega\": 0.1,, }\n}");
        FAIL("expected a parse error");
    } catch (const ConfigParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 26);
        CHECK(std::string(e.what()).find("line 2, column 26") != std::string::npos);
    }
}

TEST_CASE("intensity needs an explicit unit") {
    CHECK_FALSE(parse_config(R"({"laser": {"omega": 0.057, "intensity": 1e14}})").ok());
    CHECK_FALSE(parse_config(R"({"laser": {"omega": 0.057, "intensity": "1e14"}})").ok());
    CHECK_FALSE(parse_intensity("1e14 W").has_value());
    const auto a = parse_intensity("3.50945e16 W/cm2");
    REQUIRE(a);
    CHECK(a->au() == doctest::Approx(1.0).epsilon(1e-15));
    const auto b = parse_intensity("0.5au");
    REQUIRE(b);
    CHECK(b->au() == 0.5);

    const RunConfig c = parsed(R"({"task": "params", "laser": {"omega": 0.1, "intensity": "0.012 au"}})");
    const json out = json::parse(execute(c).out);
    CHECK(out["data"]["field"]["up"].get<double>() == doctest::Approx(0.3).epsilon(1e-15));
}

TEST_CASE("drive must be given exactly once") {
    CHECK_FALSE(parse_config(R"({"task": "rate", "laser": {"omega": 0.1}})").ok());
    CHECK_FALSE(parse_config(R"({"task": "rate", "laser": {"omega": 0.1, "up": 0.3, "e0": 0.1}})").ok());
}

TEST_CASE("canonical form reproduces the configuration") {
    const RunConfig c = parsed(R"({"task": "fit", "laser": {"omega": 0.057, "polarization": "circular"},
        "atom": {"kind": "hydrogenic_2p_m+1", "eb": 0.7925, "principal_n": 2, "average_m": false},
        "fit": {"sweep": {"gamma_k": [0.3, 0.4], "delta_points": 4}},
        "rate": {"theta": [0.1, 0.2]}, "momentum_map": {"kernel_width": 0.01}})");
    const json j = to_json(c);
    const RunConfig back = parsed(j.dump());
    CHECK(to_json(back) == j);
    CHECK(config_hash(back) == config_hash(c));
}

TEST_CASE("every task is deterministic") {
    std::vector<std::string> docs = {
        R"({"task": "params", "laser": {"omega": 0.1, "up": 0.3}})",
        R"({"task": "regime-map", "regime_map": {"n_omega": 12, "n_intensity": 12}})",
        R"({"task": "rate", "laser": {"omega": 0.1, "up": 0.3, "polarization": "circular"}, "rate": {"n_theta": 7}})",
        R"({"task": "spectrum", "laser": {"omega": 0.057, "up": 0.22}})",
        R"({"task": "momentum-map", "laser": {"omega": 0.1, "up": 0.3}, "momentum_map": {"n_par": 9, "n_perp": 9}})",
        R"({"task": "bessel", "bessel": {"n": 100, "x": 50, "method": "both"}})",
        R"({"task": "fit", "fit": {"samples": [[0.05, 1e-6], [0.06, 1e-5], [0.08, 2e-4]]}})",
    };
    for (const auto& d : docs) {
        for (Format f : {Format::csv, Format::json}) {
            RunConfig c = parsed(d);
            c.output.format = f;
            const Result a = execute(c), b = execute(c);
            REQUIRE_MESSAGE(a.code == 0, d << a.err);
            CHECK(a.out == b.out);
            CHECK(!a.out.empty());
            if (f == Format::csv)
                CHECK(a.out.rfind("# tool: sfi", 0) == 0);
            else
                CHECK(json::parse(a.out).contains("meta"));
        }
    }
}

TEST_CASE("exit codes") {
    RunConfig bad = parsed(R"({"task": "params", "laser": {"omega": 0.1, "up": 0.3}})");
    bad.laser.omega = -1.0;
    const Result v = execute(bad);
    CHECK(v.code == 1);
    CHECK(v.err.find("laser.omega") != std::string::npos);

    RunConfig acc = parsed(R"({"task": "spectrum", "laser": {"omega": 0.1, "up": 0.3},
        "tolerances": {"quad_order": 8, "rel_tol": 1e-12}})");
    const Result a = execute(acc);
    CHECK(a.code == 2);
    CHECK(a.err.find("estimates") != std::string::npos);
}

TEST_CASE("command line: params example") {
    const Result r = invoke({"params", "--omega", "0.1", "--up", "0.3", "--eb", "0.5"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["data"]["field"]["z"].get<double>() == doctest::Approx(3.0));
    CHECK(j["data"]["field"]["z1"].get<double>() == doctest::Approx(1.2));
    for (const char* k : {"gamma_k", "alpha0_c", "beta0", "z_f"}) CHECK(j["data"]["field"].contains(k));
    CHECK(j["meta"]["version"] == "0.1.0");
    CHECK(j["meta"]["config_hash"].get<std::string>().size() == 16);
}

TEST_CASE("command line: regime map writes a grid and polylines") {
    const auto path = scratch("map.csv");
    const Result r = invoke({"regime-map", "--omega", "1e-3..2", "--intensity", "1e10..1e20", "--eb", "0.5", "-o",
                             path.string()});
    REQUIRE(r.code == 0);
    std::ifstream lines(path.string() + ".polylines.json");
    const json pl = json::parse(lines);
    bool vertical = false;
    for (const auto& l : pl["data"]["polylines"])
        if (l["name"] == "omega=E_B") {
            vertical = true;
            for (const auto& v : l["vertices"]) CHECK(v[0].get<double>() == 0.5);
        }
    CHECK(vertical);
}

TEST_CASE("command line: bessel example") {
    const Result r = invoke({"bessel", "--n", "100", "--x", "50", "--method", "both"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["data"]["direct"]["value"].get<double>() > 0.0);
    CHECK(j["data"]["asymptotic"]["value"].get<double>() > 0.0);
    CHECK(std::abs(j["data"]["rel_deviation"].get<double>()) < 1e-2);
}

TEST_CASE("command line: flags override the configuration file") {
    const auto path = scratch("cfg.json");
    std::ofstream(path) << R"({"task": "params", "laser": {"omega": 0.2, "up": 0.3}})";
    const Result r = invoke({"params", "-c", path.string(), "--omega", "0.1"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["data"]["field"]["omega"].get<double>() == 0.1);
    const Result file_only = invoke({"run", "-c", path.string()});
    REQUIRE(file_only.code == 0);
    CHECK(json::parse(file_only.out)["data"]["field"]["omega"].get<double>() == 0.2);
}

TEST_CASE("command line: rejections") {
    CHECK(invoke({"params", "--omega", "0.1", "--intensity", "1e14"}).code == 1);
    CHECK(invoke({"params", "--omega", "-0.1", "--up", "0.3"}).code == 1);
    CHECK(invoke({"params", "--no-such-flag"}).code == 1);
    CHECK(invoke({}).code == 1);
    const auto path = scratch("broken.json");
    std::ofstream(path) << "{\"task\": \"params\",\n \"laser\": }";
    const Result r = invoke({"run", "-c", path.string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("line 2") != std::string::npos);
}

TEST_CASE("command line: schema dump documents every CSV column") {
    const Result r = invoke({"--schema"});
    REQUIRE(r.code == 0);
    const json s = json::parse(r.out);
    CHECK(s["sections"].contains("laser"));
    CHECK(s["defaults"]["tolerances"]["tail_eps"].get<double>() == 1e-8);
    std::size_t layouts = 0;
    for (const auto& l : s["csv"]["layouts"]) layouts += l["columns"].empty() ? 0 : 1;
    CHECK(layouts >= 7);
}
