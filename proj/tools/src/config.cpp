#include "sfi_cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>
#include <type_traits>

#include "sfi/constants.hpp"
#include "sfi/errors.hpp"
#include "sfi/serialize.hpp"

namespace sfi::cli {

using nlohmann::json;

namespace {

constexpr std::pair<Task, std::string_view> kTaskNames[] = {
    {Task::params, "params"},         {Task::regime_map, "regime-map"},
    {Task::rate, "rate"},             {Task::spectrum, "spectrum"},
    {Task::momentum_map, "momentum-map"}, {Task::bessel, "bessel"},
    {Task::fit, "fit"},
};

struct KeyDoc {
    std::string_view key;
    std::string_view type;
    std::string_view unit;  // empty when dimensionless
    std::string_view description;
};

struct SectionDoc {
    std::string_view name;
    std::string_view description;
    std::vector<KeyDoc> keys;
};

const std::vector<SectionDoc>& sections() {
    static const std::vector<SectionDoc> s = {
        {"laser",
         "Laser field. Give omega and exactly one of up, e0, intensity.",
         {{"omega", "number", "a.u.", "photon energy"},
          {"up", "number", "a.u.", "ponderomotive energy"},
          {"e0", "number", "a.u.", "peak electric field"},
          {"intensity", "string", "W/cm2 or au",
           "intensity with an explicit unit suffix, e.g. \"1e14 W/cm2\" or \"0.0285 au\""},
          {"polarization", "string", "", "linear | circular"}}},
        {"atom",
         "Bound state. z_eff defaults to n sqrt(2 eb) for the state's principal quantum number.",
         {{"kind", "string", "",
           "hydrogenic_1s | hydrogenic_2p_m0 | hydrogenic_2p_m+1 | hydrogenic_2p_m-1"},
          {"eb", "number", "a.u.", "binding energy"},
          {"z_eff", "number", "", "effective nuclear charge"},
          {"principal_n", "integer", "", "principal quantum number used to derive z_eff"},
          {"average_m", "boolean", "", "average |phi|^2 over m for 2p states"}}},
        {"tolerances",
         "Numerical controls.",
         {{"tail_eps", "number", "", "relative tail bound for channel truncation (default 1e-8)"},
          {"threshold", "number", "", "ratio counted as 'much greater than' (default 10)"},
          {"quad_order", "integer", "", "Gauss-Legendre order in cos(theta); 0 picks automatically"},
          {"rel_tol", "number", "", "order-doubling target for total rates (default 1e-6)"},
          {"azimuth_points", "integer", "", "trapezoid points in phi for linear polarization"},
          {"max_order", "integer", "", "largest quadrature order tried"}}},
        {"rate",
         "Angular distribution for task rate.",
         {{"theta", "array<number>", "rad", "explicit polar angles"},
          {"n_theta", "integer", "", "uniform angles on [0, pi] when theta is absent"},
          {"phi", "number", "rad", "azimuth"},
          {"linear_axis", "string", "", "polarization | propagation: axis theta is measured from"},
          {"asymptotic_from_order", "integer", "",
           "channels at or above this order use the large-order Bessel form; 0 disables"}}},
        {"regime_map",
         "Laser-parameter plane.",
         {{"omega", "range", "a.u.", "[lo, hi] or \"lo..hi\""},
          {"intensity_wcm2", "range", "W/cm2", "[lo, hi] or \"lo..hi\""},
          {"n_omega", "integer", "", "grid points along omega"},
          {"n_intensity", "integer", "", "grid points along intensity"},
          {"log_spacing", "boolean", "", "logarithmic axes"},
          {"gamma_k_lines", "array<number>", "", "Keldysh parameters of the constant-gamma_K lines"}}},
        {"momentum_map",
         "Photoelectron momentum distribution.",
         {{"p_par_max", "number", "a.u.", "p_par axis spans [-max, max]"},
          {"p_perp_max", "number", "a.u.", "p_perp axis spans [-max, max]"},
          {"n_par", "integer", "", "points along p_par"},
          {"n_perp", "integer", "", "points along p_perp"},
          {"kernel_width", "number", "a.u.", "Gaussian energy width; default omega/2, 0 gives bare rings"}}},
        {"bessel",
         "Spot evaluation. x gives J_n(x); u and v give J_n(u, v).",
         {{"n", "integer", "", "order"},
          {"x", "number", "", "argument"},
          {"u", "number", "", "first argument of the two-argument function"},
          {"v", "number", "", "second argument of the two-argument function"},
          {"method", "string", "", "direct | asymptotic | both"}}},
        {"fit",
         "Fit ln W = a - C/E. Give samples, or a sweep over the laser and atom sections.",
         {{"samples", "array<[number, number]>", "a.u.", "[field, rate] pairs"},
          {"weights", "array<number>", "", "one weight per sample"},
          {"sweep", "object", "", "channel-averaged field sweep"}}},
        {"fit.sweep",
         "One sample per lowest photon order, averaged across that order's U_p interval.",
         {{"gamma_k", "range", "", "Keldysh parameter window"},
          {"beta0_max", "number", "", "upper bound on beta0"},
          {"delta_points", "integer", "", "averaging points per channel interval"},
          {"observable", "string", "", "lowest_channel | total_rate"}}},
        {"output",
         "Artifact destination.",
         {{"path", "string", "", "file path, or - for standard output"},
          {"format", "string", "", "auto | csv | json"},
          {"polylines_path", "string", "", "regime-map polylines; default <path>.polylines.json"}}},
    };
    return s;
}

const SectionDoc* find_section(std::string_view name) {
    for (const auto& s : sections())
        if (s.name == name) return &s;
    return nullptr;
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t sub = prev[j - 1] + (std::tolower(a[i - 1]) == std::tolower(b[j - 1]) ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

std::string lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

// Best known key for an unknown one. Unit-suffixed spellings (omega_eV,
// intensity_Wcm2) map to their stem first.
const KeyDoc* suggest(std::string_view unknown, const std::vector<KeyDoc>& keys) {
    const std::string u = lower(unknown);
    const KeyDoc* best = nullptr;
    std::size_t best_len = 0;
    for (const auto& k : keys) {
        const std::string kk = lower(k.key);
        if (u == kk || (u.size() > kk.size() && u.compare(0, kk.size(), kk) == 0 &&
                        (u[kk.size()] == '_' || u[kk.size()] == '-'))) {
            if (kk.size() > best_len) {
                best = &k;
                best_len = kk.size();
            }
        }
    }
    if (best) return best;
    std::size_t best_d = std::max<std::size_t>(2, unknown.size() / 3) + 1;
    for (const auto& k : keys) {
        const std::size_t d = edit_distance(unknown, k.key);
        if (d < best_d) {
            best = &k;
            best_d = d;
        }
    }
    return best;
}

std::string suggestion_text(const std::string& qualified, const KeyDoc& k) {
    std::string s = "did you mean \"" + qualified + "\"";
    if (!k.unit.empty()) s += " (" + std::string(k.unit) + ")";
    return s + "?";
}

class Reader {
public:
    Reader(const json& obj, std::string path, std::vector<Issue>& issues)
        : obj_(obj), path_(std::move(path)), issues_(issues) {}

    bool has(std::string_view key) const { return obj_.contains(std::string(key)); }

    std::string at(std::string_view key) const { return path_.empty() ? std::string(key) : path_ + "." + std::string(key); }

    void issue(std::string_view key, std::string message) { issues_.push_back({at(key), std::move(message)}); }

    void number(std::string_view key, double& out) {
        std::optional<double> v;
        number(key, v);
        if (v) out = *v;
    }

    void number(std::string_view key, std::optional<double>& out) {
        const json* j = get(key);
        if (!j) return;
        if (!j->is_number()) return issue(key, "expected a number");
        out = j->get<double>();
    }

    template <class Int>
    void integer(std::string_view key, Int& out) {
        const json* j = get(key);
        if (!j) return;
        if (!j->is_number_integer()) return issue(key, "expected an integer");
        if (j->is_number_unsigned()) {
            out = static_cast<Int>(j->get<std::uint64_t>());
        } else {
            const auto v = j->get<std::int64_t>();
            if (std::is_unsigned_v<Int> && v < 0) return issue(key, "must be non-negative");
            out = static_cast<Int>(v);
        }
    }

    void integer(std::string_view key, std::optional<int>& out) {
        int v = 0;
        const std::size_t before = issues_.size();
        if (!has(key)) return;
        integer(key, v);
        if (issues_.size() == before) out = v;
    }

    void boolean(std::string_view key, bool& out) {
        const json* j = get(key);
        if (!j) return;
        if (!j->is_boolean()) return issue(key, "expected true or false");
        out = j->get<bool>();
    }

    const std::string* string(std::string_view key) {
        const json* j = get(key);
        if (!j) return nullptr;
        if (!j->is_string()) {
            issue(key, "expected a string");
            return nullptr;
        }
        return j->get_ptr<const std::string*>();
    }

    void numbers(std::string_view key, std::vector<double>& out) {
        const json* j = get(key);
        if (!j) return;
        if (!j->is_array()) return issue(key, "expected an array of numbers");
        std::vector<double> v;
        for (const auto& e : *j) {
            if (!e.is_number()) return issue(key, "expected an array of numbers");
            v.push_back(e.get<double>());
        }
        out = std::move(v);
    }

    void range(std::string_view key, Range& out) {
        const json* j = get(key);
        if (!j) return;
        if (j->is_string()) {
            if (auto r = parse_range(j->get<std::string>())) {
                out = *r;
                return;
            }
        } else if (j->is_array() && j->size() == 2 && (*j)[0].is_number() && (*j)[1].is_number()) {
            out = {(*j)[0].get<double>(), (*j)[1].get<double>()};
            return;
        }
        issue(key, "expected [lo, hi] or \"lo..hi\"");
    }

    const json* object(std::string_view key) {
        const json* j = get(key);
        if (!j) return nullptr;
        if (!j->is_object()) {
            issue(key, "expected an object");
            return nullptr;
        }
        return j;
    }

    // Reports every key nobody asked for.
    void close(const std::vector<KeyDoc>& known) {
        for (auto it = obj_.begin(); it != obj_.end(); ++it) {
            if (seen_.count(it.key())) continue;
            std::string msg = "unknown key \"" + it.key() + "\"";
            if (const KeyDoc* k = suggest(it.key(), known))
                msg += "; " + suggestion_text(std::string(k->key), *k);
            issues_.push_back({at(it.key()), msg});
        }
    }

    void mark(std::string_view key) { seen_.emplace(key); }

private:
    const json* get(std::string_view key) {
        mark(key);
        auto it = obj_.find(std::string(key));
        if (it == obj_.end() || it->is_null()) return nullptr;
        return &*it;
    }

    const json& obj_;
    std::string path_;
    std::vector<Issue>& issues_;
    struct Seen {
        std::vector<std::string> keys;
        void emplace(std::string_view k) {
            if (!count(k)) keys.emplace_back(k);
        }
        bool count(std::string_view k) const { return std::find(keys.begin(), keys.end(), k) != keys.end(); }
    } seen_;
};

template <class E, std::size_t N>
void enum_field(Reader& r, std::string_view key, E& out, const std::pair<E, std::string_view> (&names)[N]) {
    const std::string* s = r.string(key);
    if (!s) return;
    for (const auto& [e, name] : names)
        if (name == *s) {
            out = e;
            return;
        }
    std::string allowed;
    for (const auto& [e, name] : names) allowed += (allowed.empty() ? "" : " | ") + std::string(name);
    r.issue(key, "\"" + *s + "\" is not one of " + allowed);
}

constexpr std::pair<Polarization, std::string_view> kPolarizations[] = {
    {Polarization::linear, "linear"}, {Polarization::circular, "circular"}};
constexpr std::pair<StateKind, std::string_view> kKinds[] = {
    {StateKind::hydrogenic_1s, "hydrogenic_1s"},
    {StateKind::hydrogenic_2p_m0, "hydrogenic_2p_m0"},
    {StateKind::hydrogenic_2p_mplus1, "hydrogenic_2p_m+1"},
    {StateKind::hydrogenic_2p_mminus1, "hydrogenic_2p_m-1"}};
constexpr std::pair<LinearAngleAxis, std::string_view> kAxes[] = {
    {LinearAngleAxis::polarization, "polarization"}, {LinearAngleAxis::propagation, "propagation"}};
constexpr std::pair<BesselMode, std::string_view> kModes[] = {
    {BesselMode::direct, "direct"}, {BesselMode::asymptotic, "asymptotic"}, {BesselMode::both, "both"}};
constexpr std::pair<Format, std::string_view> kFormats[] = {
    {Format::automatic, "auto"}, {Format::csv, "csv"}, {Format::json, "json"}};

template <class E, std::size_t N>
std::string name_of(E e, const std::pair<E, std::string_view> (&names)[N]) {
    for (const auto& [v, name] : names)
        if (v == e) return std::string(name);
    return {};
}

std::vector<KeyDoc> top_level_keys() {
    std::vector<KeyDoc> keys = {{"task", "string", "", ""}};
    for (const auto& s : sections())
        if (s.name.find('.') == std::string_view::npos) keys.push_back({s.name, "object", "", ""});
    return keys;
}

std::string intensity_text(const Intensity& i) {
    return format_double(i.value) + (i.atomic_units ? " au" : " W/cm2");
}

std::string range_text(const Range& r) { return format_double(r.lo) + ".." + format_double(r.hi); }

bool positive(double v) { return v > 0.0 && std::isfinite(v); }

}  // namespace

std::string_view to_string(Task t) {
    for (const auto& [task, name] : kTaskNames)
        if (task == t) return name;
    return "?";
}

std::optional<Task> task_from_string(std::string_view s) {
    for (const auto& [task, name] : kTaskNames)
        if (name == s) return task;
    return std::nullopt;
}

double Intensity::au() const { return atomic_units ? value : constants::wcm2_to_au(value); }

std::optional<Intensity> parse_intensity(std::string_view text) {
    std::size_t b = 0;
    while (b < text.size() && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
    double v = 0.0;
    const auto res = std::from_chars(text.data() + b, text.data() + text.size(), v);
    if (res.ec != std::errc{}) return std::nullopt;
    std::string unit;
    for (const char* p = res.ptr; p != text.data() + text.size(); ++p)
        if (!std::isspace(static_cast<unsigned char>(*p))) unit += static_cast<char>(std::tolower(static_cast<unsigned char>(*p)));
    if (unit == "w/cm2" || unit == "w/cm^2" || unit == "wcm-2" || unit == "w/cm**2") return Intensity{v, false};
    if (unit == "au" || unit == "a.u." || unit == "a.u") return Intensity{v, true};
    return std::nullopt;
}

std::optional<Range> parse_range(std::string_view text) {
    const auto sep = text.find("..");
    if (sep == std::string_view::npos) return std::nullopt;
    Range r;
    const auto a = std::from_chars(text.data(), text.data() + sep, r.lo);
    const auto b = std::from_chars(text.data() + sep + 2, text.data() + text.size(), r.hi);
    if (a.ec != std::errc{} || a.ptr != text.data() + sep) return std::nullopt;
    if (b.ec != std::errc{} || b.ptr != text.data() + text.size()) return std::nullopt;
    return r;
}

ConfigResult config_from_json(const json& doc) {
    ConfigResult out;
    RunConfig cfg;
    auto& issues = out.issues;
    if (!doc.is_object()) {
        issues.push_back({"", "configuration must be a JSON object"});
        return out;
    }

    Reader top(doc, "", issues);
    if (const std::string* t = top.string("task")) {
        if (auto task = task_from_string(*t))
            cfg.task = *task;
        else
            top.issue("task", "\"" + *t + "\" is not a task (params | regime-map | rate | spectrum | momentum-map | bessel | fit)");
    }

    if (const json* j = top.object("laser")) {
        Reader r(*j, "laser", issues);
        auto& l = cfg.laser;
        r.number("omega", l.omega);
        r.number("up", l.up);
        r.number("e0", l.e0);
        if (r.has("intensity")) {
            r.mark("intensity");
            const json& v = (*j)["intensity"];
            if (v.is_string()) {
                if (auto i = parse_intensity(v.get<std::string>()))
                    l.intensity = *i;
                else
                    r.issue("intensity", "cannot read \"" + v.get<std::string>() +
                                             "\"; use a number with a unit suffix, e.g. \"1e14 W/cm2\" or \"0.0285 au\"");
            } else if (v.is_number()) {
                r.issue("intensity", "a bare number is ambiguous; add a unit suffix, e.g. \"1e14 W/cm2\" or \"0.0285 au\"");
            } else {
                r.issue("intensity", "expected a string with a unit suffix");
            }
        }
        enum_field(r, "polarization", l.polarization, kPolarizations);
        r.close(find_section("laser")->keys);
    }

    if (const json* j = top.object("atom")) {
        Reader r(*j, "atom", issues);
        auto& a = cfg.atom;
        enum_field(r, "kind", a.kind, kKinds);
        r.number("eb", a.eb);
        r.number("z_eff", a.z_eff);
        r.integer("principal_n", a.principal_n);
        r.boolean("average_m", a.average_m);
        r.close(find_section("atom")->keys);
    }

    if (const json* j = top.object("tolerances")) {
        Reader r(*j, "tolerances", issues);
        auto& t = cfg.tolerances;
        r.number("tail_eps", t.tail_eps);
        r.number("threshold", t.threshold);
        r.integer("quad_order", t.quad_order);
        r.number("rel_tol", t.rel_tol);
        r.integer("azimuth_points", t.azimuth_points);
        r.integer("max_order", t.max_order);
        r.close(find_section("tolerances")->keys);
    }

    if (const json* j = top.object("rate")) {
        Reader r(*j, "rate", issues);
        auto& c = cfg.rate;
        r.numbers("theta", c.theta);
        r.integer("n_theta", c.n_theta);
        r.number("phi", c.phi);
        enum_field(r, "linear_axis", c.linear_axis, kAxes);
        r.integer("asymptotic_from_order", c.asymptotic_from_order);
        r.close(find_section("rate")->keys);
    }

    if (const json* j = top.object("regime_map")) {
        Reader r(*j, "regime_map", issues);
        auto& c = cfg.regime_map;
        r.range("omega", c.omega);
        r.range("intensity_wcm2", c.intensity_wcm2);
        r.integer("n_omega", c.n_omega);
        r.integer("n_intensity", c.n_intensity);
        r.boolean("log_spacing", c.log_spacing);
        r.numbers("gamma_k_lines", c.gamma_k_lines);
        r.close(find_section("regime_map")->keys);
    }

    if (const json* j = top.object("momentum_map")) {
        Reader r(*j, "momentum_map", issues);
        auto& c = cfg.momentum_map;
        r.number("p_par_max", c.p_par_max);
        r.number("p_perp_max", c.p_perp_max);
        r.integer("n_par", c.n_par);
        r.integer("n_perp", c.n_perp);
        r.number("kernel_width", c.kernel_width);
        r.close(find_section("momentum_map")->keys);
    }

    if (const json* j = top.object("bessel")) {
        Reader r(*j, "bessel", issues);
        auto& c = cfg.bessel;
        r.integer("n", c.n);
        r.number("x", c.x);
        r.number("u", c.u);
        r.number("v", c.v);
        enum_field(r, "method", c.method, kModes);
        r.close(find_section("bessel")->keys);
    }

    if (const json* j = top.object("fit")) {
        Reader r(*j, "fit", issues);
        auto& c = cfg.fit;
        if (r.has("samples")) {
            r.mark("samples");
            const json& s = (*j)["samples"];
            bool good = s.is_array();
            if (good)
                for (const auto& e : s) {
                    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
                        good = false;
                        break;
                    }
                    c.samples.push_back({e[0].get<double>(), e[1].get<double>()});
                }
            if (!good) {
                c.samples.clear();
                r.issue("samples", "expected an array of [field, rate] pairs");
            }
        }
        r.numbers("weights", c.weights);
        if (const json* sj = r.object("sweep")) {
            Reader sr(*sj, "fit.sweep", issues);
            SweepConfig sw;
            sr.range("gamma_k", sw.gamma_k);
            sr.number("beta0_max", sw.beta0_max);
            sr.integer("delta_points", sw.delta_points);
            if (const std::string* o = sr.string("observable")) {
                if (*o == "lowest_channel" || *o == "total_rate")
                    sw.observable = *o;
                else
                    sr.issue("observable", "\"" + *o + "\" is not one of lowest_channel | total_rate");
            }
            sr.close(find_section("fit.sweep")->keys);
            c.sweep = sw;
        }
        r.close(find_section("fit")->keys);
    }

    if (const json* j = top.object("output")) {
        Reader r(*j, "output", issues);
        auto& c = cfg.output;
        if (const std::string* p = r.string("path")) c.path = *p;
        enum_field(r, "format", c.format, kFormats);
        if (const std::string* p = r.string("polylines_path")) c.polylines_path = *p;
        r.close(find_section("output")->keys);
    }

    // Top-level strays are often section keys written flat; search them all.
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        bool known = false;
        for (const auto& k : top_level_keys())
            if (k.key == it.key()) known = true;
        if (known) continue;
        std::string msg = "unknown key \"" + it.key() + "\"";
        const KeyDoc* best = suggest(it.key(), top_level_keys());
        std::string qualified = best ? std::string(best->key) : std::string();
        if (!best) {
            for (const auto& s : sections()) {
                if (const KeyDoc* k = suggest(it.key(), s.keys)) {
                    best = k;
                    qualified = std::string(s.name) + "." + std::string(k->key);
                    break;
                }
            }
        }
        if (best) msg += "; " + suggestion_text(qualified, *best);
        issues.push_back({it.key(), msg});
    }

    out.partial = cfg;
    if (issues.empty()) out.config = std::move(cfg);
    return out;
}

std::vector<Issue> validate(const RunConfig& cfg) {
    std::vector<Issue> issues;
    auto add = [&](std::string path, std::string msg) { issues.push_back({std::move(path), std::move(msg)}); };

    const auto& l = cfg.laser;
    const bool needs_laser = cfg.task == Task::params || cfg.task == Task::rate || cfg.task == Task::spectrum ||
                             cfg.task == Task::momentum_map || (cfg.task == Task::fit && cfg.fit.samples.empty());
    const bool needs_drive = needs_laser && cfg.task != Task::fit;
    const bool needs_atom = needs_laser || cfg.task == Task::regime_map;

    bool laser_ok = true;
    if (needs_laser) {
        if (!l.omega) {
            add("laser.omega", "omega is required");
            laser_ok = false;
        } else if (!positive(*l.omega)) {
            add("laser.omega", "omega must be positive and finite");
            laser_ok = false;
        }
    }
    const int drives = (l.up ? 1 : 0) + (l.e0 ? 1 : 0) + (l.intensity ? 1 : 0);
    if (needs_drive && drives != 1) {
        add("laser", drives == 0 ? "give one of up, e0, intensity" : "give only one of up, e0, intensity");
        laser_ok = false;
    }
    if (l.up && !positive(*l.up)) add("laser.up", "up must be positive and finite"), laser_ok = false;
    if (l.e0 && !positive(*l.e0)) add("laser.e0", "e0 must be positive and finite"), laser_ok = false;
    if (l.intensity && !positive(l.intensity->value))
        add("laser.intensity", "intensity must be positive and finite"), laser_ok = false;

    const auto& a = cfg.atom;
    bool atom_ok = true;
    if (needs_atom) {
        if (!positive(a.eb)) add("atom.eb", "eb must be positive and finite"), atom_ok = false;
        if (a.z_eff && !positive(*a.z_eff)) add("atom.z_eff", "z_eff must be positive and finite"), atom_ok = false;
        const int kind_n = a.kind == StateKind::hydrogenic_1s ? 1 : 2;
        if (a.principal_n && *a.principal_n != kind_n)
            add("atom.principal_n", "principal_n " + std::to_string(*a.principal_n) + " does not match kind " +
                                        std::string(sfi::to_string(a.kind))),
                atom_ok = false;
        if (a.z_eff && a.principal_n) add("atom", "give z_eff or principal_n, not both"), atom_ok = false;
    }

    // Cross-checks by the library once the individual fields are sane.
    if (needs_drive && laser_ok && atom_ok) {
        try {
            derive_params(resolve_laser(l), a.eb);
        } catch (const DomainError& e) {
            add(e.field() == "eb" ? "atom.eb" : "laser." + e.field(), e.what());
        }
    }
    if (needs_atom && atom_ok) {
        try {
            resolve_state(a);
        } catch (const DomainError& e) {
            add("atom." + e.field(), e.what());
        }
    }

    const auto& t = cfg.tolerances;
    if (!(t.tail_eps > 0.0 && t.tail_eps < 1.0)) add("tolerances.tail_eps", "tail_eps must lie in (0, 1)");
    if (!positive(t.threshold)) add("tolerances.threshold", "threshold must be positive");
    if (t.quad_order < 0) add("tolerances.quad_order", "quad_order must be >= 0");
    if (!(t.rel_tol > 0.0 && t.rel_tol < 1.0)) add("tolerances.rel_tol", "rel_tol must lie in (0, 1)");
    if (t.azimuth_points < 1) add("tolerances.azimuth_points", "azimuth_points must be >= 1");
    if (t.max_order < 2 || t.max_order > 65536) add("tolerances.max_order", "max_order must lie in [2, 65536]");

    if (cfg.task == Task::rate) {
        const auto& r = cfg.rate;
        if (r.theta.empty() && r.n_theta < 1) add("rate.n_theta", "n_theta must be >= 1");
        for (double th : r.theta)
            if (!(th >= 0.0 && th <= constants::pi)) {
                add("rate.theta", "angles must lie in [0, pi]");
                break;
            }
        if (!std::isfinite(r.phi)) add("rate.phi", "phi must be finite");
    }
    if (cfg.rate.asymptotic_from_order < 0) add("rate.asymptotic_from_order", "must be >= 0");

    if (cfg.task == Task::regime_map) {
        const auto& m = cfg.regime_map;
        if (!positive(m.omega.lo) || !positive(m.omega.hi) || !(m.omega.lo < m.omega.hi))
            add("regime_map.omega", "need 0 < lo < hi");
        if (!positive(m.intensity_wcm2.lo) || !positive(m.intensity_wcm2.hi) ||
            !(m.intensity_wcm2.lo < m.intensity_wcm2.hi))
            add("regime_map.intensity_wcm2", "need 0 < lo < hi");
        if (m.n_omega < 2 || m.n_omega > 100000) add("regime_map.n_omega", "n_omega must lie in [2, 100000]");
        if (m.n_intensity < 2 || m.n_intensity > 100000)
            add("regime_map.n_intensity", "n_intensity must lie in [2, 100000]");
        for (double g : m.gamma_k_lines)
            if (!positive(g)) {
                add("regime_map.gamma_k_lines", "Keldysh parameters must be positive");
                break;
            }
    }

    if (cfg.task == Task::momentum_map) {
        const auto& m = cfg.momentum_map;
        if (!positive(m.p_par_max)) add("momentum_map.p_par_max", "must be positive");
        if (!positive(m.p_perp_max)) add("momentum_map.p_perp_max", "must be positive");
        if (m.n_par < 2 || m.n_par > 100000) add("momentum_map.n_par", "n_par must lie in [2, 100000]");
        if (m.n_perp < 2 || m.n_perp > 100000) add("momentum_map.n_perp", "n_perp must lie in [2, 100000]");
        if (m.kernel_width && !(*m.kernel_width >= 0.0 && std::isfinite(*m.kernel_width)))
            add("momentum_map.kernel_width", "kernel_width must be >= 0");
    }

    if (cfg.task == Task::bessel) {
        const auto& b = cfg.bessel;
        const bool two = b.u.has_value() || b.v.has_value();
        if (two && b.x) add("bessel", "give x, or u and v, not both");
        if (!two && !b.x) add("bessel.x", "x is required");
        if (two && !(b.u && b.v)) add("bessel", "u and v go together");
        if (two && b.method != BesselMode::direct)
            add("bessel.method", "the two-argument function has only the direct method");
        for (auto [name, v] : {std::pair{"bessel.x", b.x}, {"bessel.u", b.u}, {"bessel.v", b.v}})
            if (v && !std::isfinite(*v)) add(name, "must be finite");
        if (b.method != BesselMode::direct && b.x && !(*b.x > 0.0 && b.n > *b.x))
            add("bessel.method", "the large-order form needs 0 < x < n");
    }

    if (cfg.task == Task::fit) {
        const auto& f = cfg.fit;
        if (f.samples.empty() && !f.sweep) add("fit", "give samples or a sweep");
        if (!f.samples.empty() && f.sweep) add("fit", "give samples or a sweep, not both");
        if (!f.samples.empty() && f.samples.size() < 3) add("fit.samples", "need at least 3 samples");
        for (const auto& s : f.samples)
            if (!positive(s.field) || !positive(s.rate)) {
                add("fit.samples", "fields and rates must be positive");
                break;
            }
        if (!f.weights.empty() && f.weights.size() != f.samples.size())
            add("fit.weights", "need one weight per sample");
        if (f.sweep) {
            const auto& s = *f.sweep;
            if (!positive(s.gamma_k.lo) || !(s.gamma_k.lo <= s.gamma_k.hi)) add("fit.sweep.gamma_k", "need 0 < lo <= hi");
            if (!positive(s.beta0_max)) add("fit.sweep.beta0_max", "must be positive");
            if (s.delta_points < 1 || s.delta_points > 4096) add("fit.sweep.delta_points", "must lie in [1, 4096]");
        }
    }

    if (cfg.output.path.empty()) add("output.path", "path must not be empty");
    return issues;
}

ConfigResult parse_config(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        // byte is 1-based and points just past the offending character
        const std::size_t pos = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < pos; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string what = e.what();
        if (auto p = what.find("syntax error"); p != std::string::npos) what = what.substr(p);
        throw ConfigParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what,
                               line, col);
    }
    ConfigResult res = config_from_json(doc);
    merge_issues(res.issues, validate(res.partial));
    if (!res.issues.empty()) res.config.reset();
    return res;
}

json to_json(const RunConfig& cfg) {
    json j;
    j["task"] = std::string(to_string(cfg.task));

    json laser = json::object();
    if (cfg.laser.omega) laser["omega"] = *cfg.laser.omega;
    if (cfg.laser.up) laser["up"] = *cfg.laser.up;
    if (cfg.laser.e0) laser["e0"] = *cfg.laser.e0;
    if (cfg.laser.intensity) laser["intensity"] = intensity_text(*cfg.laser.intensity);
    laser["polarization"] = name_of(cfg.laser.polarization, kPolarizations);
    j["laser"] = laser;

    json atom = {{"kind", name_of(cfg.atom.kind, kKinds)}, {"eb", cfg.atom.eb}, {"average_m", cfg.atom.average_m}};
    if (cfg.atom.z_eff) atom["z_eff"] = *cfg.atom.z_eff;
    if (cfg.atom.principal_n) atom["principal_n"] = *cfg.atom.principal_n;
    j["atom"] = atom;

    const auto& t = cfg.tolerances;
    j["tolerances"] = {{"tail_eps", t.tail_eps},   {"threshold", t.threshold},
                       {"quad_order", t.quad_order}, {"rel_tol", t.rel_tol},
                       {"azimuth_points", t.azimuth_points}, {"max_order", t.max_order}};

    const auto& r = cfg.rate;
    j["rate"] = {{"n_theta", r.n_theta},
                 {"phi", r.phi},
                 {"linear_axis", name_of(r.linear_axis, kAxes)},
                 {"asymptotic_from_order", r.asymptotic_from_order}};
    if (!r.theta.empty()) j["rate"]["theta"] = r.theta;

    const auto& m = cfg.regime_map;
    j["regime_map"] = {{"omega", range_text(m.omega)},
                       {"intensity_wcm2", range_text(m.intensity_wcm2)},
                       {"n_omega", m.n_omega},
                       {"n_intensity", m.n_intensity},
                       {"log_spacing", m.log_spacing},
                       {"gamma_k_lines", m.gamma_k_lines}};

    const auto& mm = cfg.momentum_map;
    j["momentum_map"] = {{"p_par_max", mm.p_par_max}, {"p_perp_max", mm.p_perp_max},
                         {"n_par", mm.n_par},         {"n_perp", mm.n_perp}};
    if (mm.kernel_width) j["momentum_map"]["kernel_width"] = *mm.kernel_width;

    const auto& b = cfg.bessel;
    j["bessel"] = {{"n", b.n}, {"method", name_of(b.method, kModes)}};
    if (b.x) j["bessel"]["x"] = *b.x;
    if (b.u) j["bessel"]["u"] = *b.u;
    if (b.v) j["bessel"]["v"] = *b.v;

    json fit = json::object();
    if (!cfg.fit.samples.empty()) {
        json s = json::array();
        for (const auto& p : cfg.fit.samples) s.push_back({p.field, p.rate});
        fit["samples"] = s;
    }
    if (!cfg.fit.weights.empty()) fit["weights"] = cfg.fit.weights;
    if (cfg.fit.sweep) {
        const auto& s = *cfg.fit.sweep;
        fit["sweep"] = {{"gamma_k", range_text(s.gamma_k)},
                        {"beta0_max", s.beta0_max},
                        {"delta_points", s.delta_points},
                        {"observable", s.observable}};
    }
    j["fit"] = fit;

    j["output"] = {{"path", cfg.output.path}, {"format", name_of(cfg.output.format, kFormats)}};
    if (!cfg.output.polylines_path.empty()) j["output"]["polylines_path"] = cfg.output.polylines_path;
    return j;
}

std::string config_hash(const RunConfig& cfg) {
    // Output location does not change the science; leave it out of the hash.
    json j = to_json(cfg);
    j.erase("output");
    return hex64(fnv1a64(j.dump()));
}

json schema() {
    json s;
    s["description"] =
        "Run configuration. Every section is optional; absent keys take their defaults. "
        "Command-line flags override the matching configuration keys.";
    s["tasks"] = json::array();
    for (const auto& [task, name] : kTaskNames) s["tasks"].push_back(std::string(name));
    json secs = json::object();
    for (const auto& sec : sections()) {
        json keys = json::object();
        for (const auto& k : sec.keys) {
            json d = {{"type", std::string(k.type)}, {"description", std::string(k.description)}};
            if (!k.unit.empty()) d["unit"] = std::string(k.unit);
            keys[std::string(k.key)] = d;
        }
        secs[std::string(sec.name)] = {{"description", std::string(sec.description)}, {"keys", keys}};
    }
    s["sections"] = secs;
    s["defaults"] = to_json(RunConfig{});
    json layouts = json::array();
    for (const auto& l : csv_layouts()) {
        json cols = json::array();
        for (const auto& c : l.columns) cols.push_back({{"name", c.name}, {"description", c.description}});
        layouts.push_back({{"name", l.name}, {"columns", cols}});
    }
    s["csv"] = {{"metadata", "leading lines start with '# ' and hold key: value pairs"}, {"layouts", layouts}};
    return s;
}

std::string format_issues(const std::vector<Issue>& issues) {
    std::ostringstream os;
    os << issues.size() << (issues.size() == 1 ? " problem" : " problems") << " in configuration:\n";
    for (const auto& i : issues) os << "  " << (i.path.empty() ? "(document)" : i.path) << ": " << i.message << '\n';
    return os.str();
}

void merge_issues(std::vector<Issue>& into, const std::vector<Issue>& more) {
    for (const auto& m : more) {
        const bool dup = std::any_of(into.begin(), into.end(), [&](const Issue& i) {
            return i.path == m.path || m.path.rfind(i.path + ".", 0) == 0 || i.path.rfind(m.path + ".", 0) == 0;
        });
        if (!dup) into.push_back(m);
    }
}

LaserInput resolve_laser(const LaserConfig& laser) {
    const double w = laser.omega.value_or(0.0);
    if (laser.e0) return LaserInput::from_peak_field(w, *laser.e0, laser.polarization);
    if (laser.intensity) {
        // U_p = I / (4 omega^2) for either polarization at fixed cycle-averaged intensity
        const double up = w > 0.0 ? laser.intensity->au() / (4.0 * w * w) : 0.0;
        return LaserInput::from_ponderomotive(w, up, laser.polarization);
    }
    return LaserInput::from_ponderomotive(w, laser.up.value_or(0.0), laser.polarization);
}

BoundStateModel resolve_state(const AtomConfig& atom) {
    const int n = atom.principal_n.value_or(atom.kind == StateKind::hydrogenic_1s ? 1 : 2);
    const double z = atom.z_eff ? *atom.z_eff : effective_charge_for(atom.eb, n);
    return BoundStateModel::make(atom.kind, z, atom.eb, atom.average_m);
}

}  // namespace sfi::cli
