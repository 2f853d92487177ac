#include <cstring>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include "sfi/constants.hpp"
#include "sfi/version.hpp"
#include "sfi_cli/run.hpp"

namespace sfi::cli {

namespace {

// Flag values are staged here and applied on top of the configuration file,
// so flags win regardless of their position on the command line.
using Override = std::function<void(RunConfig&, std::vector<Issue>&)>;

struct Staging {
    std::vector<Override> overrides;

    template <class T, class Fn>
    void add(CLI::App* app, const std::string& name, const std::string& help, Fn apply) {
        app->add_option_function<T>(
            name,
            [this, apply](const T& v) {
                overrides.push_back([apply, v](RunConfig& c, std::vector<Issue>& issues) { apply(c, v, issues); });
            },
            help);
    }
};

void add_output(CLI::App* app, Staging& s) {
    s.add<std::string>(app, "-o,--output", "output path, - for standard output",
                       [](RunConfig& c, const std::string& v, auto&) { c.output.path = v; });
    s.add<std::string>(app, "--format", "auto | csv | json", [](RunConfig& c, const std::string& v, auto& issues) {
        if (v == "auto") c.output.format = Format::automatic;
        else if (v == "csv") c.output.format = Format::csv;
        else if (v == "json") c.output.format = Format::json;
        else issues.push_back({"output.format", "\"" + v + "\" is not one of auto | csv | json"});
    });
}

void add_atom(CLI::App* app, Staging& s) {
    s.add<double>(app, "--eb", "binding energy, a.u.", [](RunConfig& c, double v, auto&) { c.atom.eb = v; });
    s.add<std::string>(app, "--state",
                       "hydrogenic_1s | hydrogenic_2p_m0 | hydrogenic_2p_m+1 | hydrogenic_2p_m-1",
                       [](RunConfig& c, const std::string& v, auto& issues) {
                           try {
                               c.atom.kind = state_kind_from_string(v);
                           } catch (const std::exception&) {
                               issues.push_back({"atom.kind", "\"" + v + "\" is not a known state"});
                           }
                       });
    s.add<double>(app, "--z-eff", "effective charge", [](RunConfig& c, double v, auto&) { c.atom.z_eff = v; });
    s.add<int>(app, "--principal-n", "principal quantum number used to derive z_eff",
               [](RunConfig& c, int v, auto&) { c.atom.principal_n = v; });
    s.add<bool>(app, "--average-m", "average 2p densities over m (true|false)",
                [](RunConfig& c, bool v, auto&) { c.atom.average_m = v; });
}

void add_laser(CLI::App* app, Staging& s) {
    s.add<double>(app, "--omega", "photon energy, a.u.", [](RunConfig& c, double v, auto&) { c.laser.omega = v; });
    s.add<double>(app, "--up", "ponderomotive energy, a.u.", [](RunConfig& c, double v, auto&) { c.laser.up = v; });
    s.add<double>(app, "--e0", "peak field, a.u.", [](RunConfig& c, double v, auto&) { c.laser.e0 = v; });
    s.add<std::string>(app, "--intensity", "intensity with unit, e.g. 1e14W/cm2 or 0.0285au",
                       [](RunConfig& c, const std::string& v, auto& issues) {
                           if (auto i = parse_intensity(v))
                               c.laser.intensity = *i;
                           else
                               issues.push_back({"laser.intensity",
                                                 "cannot read \"" + v + "\"; a unit suffix (W/cm2 or au) is required"});
                       });
    s.add<std::string>(app, "--polarization", "linear | circular",
                       [](RunConfig& c, const std::string& v, auto& issues) {
                           if (v == "linear") c.laser.polarization = Polarization::linear;
                           else if (v == "circular") c.laser.polarization = Polarization::circular;
                           else issues.push_back({"laser.polarization", "\"" + v + "\" is not linear | circular"});
                       });
}

void add_tolerances(CLI::App* app, Staging& s) {
    s.add<double>(app, "--tail-eps", "channel truncation tolerance",
                  [](RunConfig& c, double v, auto&) { c.tolerances.tail_eps = v; });
    s.add<int>(app, "--quad-order", "Gauss-Legendre order, 0 for automatic",
               [](RunConfig& c, int v, auto&) { c.tolerances.quad_order = v; });
    s.add<double>(app, "--rel-tol", "total-rate convergence target",
                  [](RunConfig& c, double v, auto&) { c.tolerances.rel_tol = v; });
    s.add<int>(app, "--azimuth-points", "azimuthal points for linear polarization",
               [](RunConfig& c, int v, auto&) { c.tolerances.azimuth_points = v; });
    s.add<std::string>(app, "--linear-axis", "polarization | propagation",
                       [](RunConfig& c, const std::string& v, auto& issues) {
                           if (v == "polarization") c.rate.linear_axis = LinearAngleAxis::polarization;
                           else if (v == "propagation") c.rate.linear_axis = LinearAngleAxis::propagation;
                           else issues.push_back({"rate.linear_axis", "\"" + v + "\" is not polarization | propagation"});
                       });
    s.add<int>(app, "--asymptotic-from", "use the large-order Bessel form from this order",
               [](RunConfig& c, int v, auto&) { c.rate.asymptotic_from_order = v; });
}

// "lo..hi" with an optional unit suffix on the intensity axis.
std::optional<Range> intensity_range_wcm2(const std::string& text) {
    std::string body = text;
    bool au = false;
    for (const char* suffix : {"W/cm2", "w/cm2", "W/cm^2"})
        if (body.size() > std::strlen(suffix) && body.compare(body.size() - std::strlen(suffix), std::string::npos, suffix) == 0)
            body.resize(body.size() - std::strlen(suffix));
    for (const char* suffix : {"au", "a.u."})
        if (body.size() > std::strlen(suffix) && body.compare(body.size() - std::strlen(suffix), std::string::npos, suffix) == 0) {
            body.resize(body.size() - std::strlen(suffix));
            au = true;
        }
    while (!body.empty() && body.back() == ' ') body.pop_back();
    auto r = parse_range(body);
    if (r && au) r = Range{constants::au_to_wcm2(r->lo), constants::au_to_wcm2(r->hi)};
    return r;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

// Two numbers per line, comma or whitespace separated; '#' starts a comment.
std::vector<RateSample> read_samples(const std::string& path) {
    std::istringstream in(read_file(path));
    std::vector<RateSample> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        for (auto& ch : line)
            if (ch == ',') ch = ' ';
        std::istringstream ls(line);
        RateSample s;
        if (!(ls >> s.field)) continue;
        if (!(ls >> s.rate)) throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected field and rate");
        out.push_back(s);
    }
    return out;
}

}  // namespace

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Strong-field ionization rates in the velocity-gauge strong-field approximation.\n"
                 "Precedence: built-in defaults < --config file < command-line flags.",
                 "sfi"};
    app.require_subcommand(0, 1);
    bool want_schema = false;
    bool want_version = false;
    app.add_flag("--schema", want_schema, "print the configuration schema and CSV column documentation");
    app.add_flag("--version", want_version, "print the version");

    Staging st;
    std::string config_path;
    std::vector<std::pair<CLI::App*, Task>> tasks;
    auto sub = [&](const char* name, const char* help, Task task) {
        CLI::App* s = app.add_subcommand(name, help);
        s->add_option("-c,--config", config_path, "JSON run configuration");
        add_output(s, st);
        tasks.emplace_back(s, task);
        return s;
    };

    CLI::App* params = sub("params", "derived field parameters and tunneling conditions", Task::params);
    add_laser(params, st);
    add_atom(params, st);
    st.add<double>(params, "--threshold", "ratio counted as much greater than",
                   [](RunConfig& c, double v, auto&) { c.tolerances.threshold = v; });

    CLI::App* regime = sub("regime-map", "laser-parameter regime map and boundary polylines", Task::regime_map);
    st.add<std::string>(regime, "--omega", "photon energy range lo..hi, a.u.",
                        [](RunConfig& c, const std::string& v, auto& issues) {
                            if (auto r = parse_range(v)) c.regime_map.omega = *r;
                            else issues.push_back({"regime_map.omega", "expected lo..hi, got \"" + v + "\""});
                        });
    st.add<std::string>(regime, "--intensity", "intensity range lo..hi in W/cm2 (append au for atomic units)",
                        [](RunConfig& c, const std::string& v, auto& issues) {
                            if (auto r = intensity_range_wcm2(v)) c.regime_map.intensity_wcm2 = *r;
                            else issues.push_back({"regime_map.intensity_wcm2", "expected lo..hi, got \"" + v + "\""});
                        });
    st.add<std::size_t>(regime, "--n-omega", "grid points along omega",
                        [](RunConfig& c, std::size_t v, auto&) { c.regime_map.n_omega = v; });
    st.add<std::size_t>(regime, "--n-intensity", "grid points along intensity",
                        [](RunConfig& c, std::size_t v, auto&) { c.regime_map.n_intensity = v; });
    st.add<bool>(regime, "--log-spacing", "logarithmic axes (true|false)",
                 [](RunConfig& c, bool v, auto&) { c.regime_map.log_spacing = v; });
    st.add<std::vector<double>>(regime, "--gamma-lines", "Keldysh parameters of constant-gamma_K lines",
                                [](RunConfig& c, const std::vector<double>& v, auto&) { c.regime_map.gamma_k_lines = v; });
    st.add<std::string>(regime, "--polylines", "polyline JSON path",
                        [](RunConfig& c, const std::string& v, auto&) { c.output.polylines_path = v; });
    st.add<double>(regime, "--eb", "binding energy, a.u.", [](RunConfig& c, double v, auto&) { c.atom.eb = v; });

    CLI::App* rate = sub("rate", "differential rate at chosen angles, plus the total rate", Task::rate);
    add_laser(rate, st);
    add_atom(rate, st);
    add_tolerances(rate, st);
    st.add<std::vector<double>>(rate, "--theta", "polar angles, rad",
                                [](RunConfig& c, const std::vector<double>& v, auto&) { c.rate.theta = v; });
    st.add<int>(rate, "--n-theta", "uniform angles on [0, pi]", [](RunConfig& c, int v, auto&) { c.rate.n_theta = v; });
    st.add<double>(rate, "--phi", "azimuth, rad", [](RunConfig& c, double v, auto&) { c.rate.phi = v; });

    CLI::App* spec = sub("spectrum", "angle-integrated partial rates per photon order", Task::spectrum);
    add_laser(spec, st);
    add_atom(spec, st);
    add_tolerances(spec, st);

    CLI::App* mmap = sub("momentum-map", "energy-smoothed photoelectron momentum distribution", Task::momentum_map);
    add_laser(mmap, st);
    add_atom(mmap, st);
    add_tolerances(mmap, st);
    st.add<double>(mmap, "--p-par-max", "p_par half-range, a.u.",
                   [](RunConfig& c, double v, auto&) { c.momentum_map.p_par_max = v; });
    st.add<double>(mmap, "--p-perp-max", "p_perp half-range, a.u.",
                   [](RunConfig& c, double v, auto&) { c.momentum_map.p_perp_max = v; });
    st.add<std::size_t>(mmap, "--n-par", "points along p_par",
                        [](RunConfig& c, std::size_t v, auto&) { c.momentum_map.n_par = v; });
    st.add<std::size_t>(mmap, "--n-perp", "points along p_perp",
                        [](RunConfig& c, std::size_t v, auto&) { c.momentum_map.n_perp = v; });
    st.add<double>(mmap, "--kernel-width", "Gaussian energy width, a.u. (default omega/2)",
                   [](RunConfig& c, double v, auto&) { c.momentum_map.kernel_width = v; });

    CLI::App* bes = sub("bessel", "spot evaluation of J_n(x) or J_n(u, v)", Task::bessel);
    st.add<int>(bes, "--n", "order", [](RunConfig& c, int v, auto&) { c.bessel.n = v; });
    st.add<double>(bes, "--x", "argument", [](RunConfig& c, double v, auto&) { c.bessel.x = v; });
    st.add<double>(bes, "--u", "first argument of J_n(u, v)", [](RunConfig& c, double v, auto&) { c.bessel.u = v; });
    st.add<double>(bes, "--v", "second argument of J_n(u, v)", [](RunConfig& c, double v, auto&) { c.bessel.v = v; });
    st.add<std::string>(bes, "--method", "direct | asymptotic | both",
                        [](RunConfig& c, const std::string& v, auto& issues) {
                            if (v == "direct") c.bessel.method = BesselMode::direct;
                            else if (v == "asymptotic") c.bessel.method = BesselMode::asymptotic;
                            else if (v == "both") c.bessel.method = BesselMode::both;
                            else issues.push_back({"bessel.method", "\"" + v + "\" is not direct | asymptotic | both"});
                        });

    CLI::App* fit = sub("fit", "fit ln W = a - C/E to samples or to a field sweep", Task::fit);
    add_laser(fit, st);
    add_atom(fit, st);
    add_tolerances(fit, st);
    st.add<std::string>(fit, "--samples", "file of field,rate pairs",
                        [](RunConfig& c, const std::string& v, auto& issues) {
                            try {
                                c.fit.samples = read_samples(v);
                            } catch (const std::exception& e) {
                                issues.push_back({"fit.samples", e.what()});
                            }
                        });
    auto sweep = [](RunConfig& c) -> SweepConfig& {
        if (!c.fit.sweep) c.fit.sweep = SweepConfig{};
        return *c.fit.sweep;
    };
    st.add<std::string>(fit, "--sweep-gamma", "Keldysh window lo..hi; enables the sweep",
                        [sweep](RunConfig& c, const std::string& v, auto& issues) {
                            if (auto r = parse_range(v)) sweep(c).gamma_k = *r;
                            else issues.push_back({"fit.sweep.gamma_k", "expected lo..hi, got \"" + v + "\""});
                        });
    st.add<double>(fit, "--beta0-max", "sweep bound on beta0",
                   [sweep](RunConfig& c, double v, auto&) { sweep(c).beta0_max = v; });
    st.add<int>(fit, "--delta-points", "sweep averaging points per channel",
                [sweep](RunConfig& c, int v, auto&) { sweep(c).delta_points = v; });
    st.add<std::string>(fit, "--observable", "lowest_channel | total_rate",
                        [sweep](RunConfig& c, const std::string& v, auto& issues) {
                            if (v == "lowest_channel" || v == "total_rate") sweep(c).observable = v;
                            else issues.push_back({"fit.sweep.observable", "\"" + v + "\" is not lowest_channel | total_rate"});
                        });

    CLI::App* runsub = app.add_subcommand("run", "run the task named in a configuration file");
    runsub->add_option("-c,--config", config_path, "JSON run configuration")->required();
    add_output(runsub, st);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_validation;
    }

    if (want_version) {
        out << "sfi " << version << '\n';
        return exit_ok;
    }
    if (want_schema) {
        out << schema().dump(2) << '\n';
        return exit_ok;
    }
    if (app.get_subcommands().empty()) {
        err << app.help();
        return exit_validation;
    }

    RunConfig cfg;
    std::vector<Issue> issues;
    if (!config_path.empty()) {
        std::string text;
        try {
            text = read_file(config_path);
        } catch (const std::exception& e) {
            err << "error: " << e.what() << '\n';
            return exit_validation;
        }
        try {
            nlohmann::json doc;
            try {
                doc = nlohmann::json::parse(text);
            } catch (const nlohmann::json::parse_error&) {
                parse_config(text);  // rethrows with line and column
            }
            ConfigResult res = config_from_json(doc);
            cfg = res.partial;
            issues = std::move(res.issues);
        } catch (const ConfigParseError& e) {
            err << config_path << ": " << e.what() << '\n';
            return exit_validation;
        }
    }

    const CLI::App* chosen = app.get_subcommands().front();
    if (chosen != runsub) {
        for (const auto& [s, task] : tasks)
            if (s == chosen) cfg.task = task;
    }
    for (const auto& o : st.overrides) o(cfg, issues);
    if (!issues.empty()) {
        merge_issues(issues, validate(cfg));
        err << format_issues(issues);
        return exit_validation;
    }
    return run(cfg, out, err, threads_from_env());
}

}  // namespace sfi::cli
