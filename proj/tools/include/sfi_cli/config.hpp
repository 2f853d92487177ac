#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sfi/bound_states.hpp"
#include "sfi/factors.hpp"
#include "sfi/momentum_map.hpp"
#include "sfi/params.hpp"
#include "sfi/rates.hpp"

namespace sfi::cli {

enum class Task { params, regime_map, rate, spectrum, momentum_map, bessel, fit };
enum class Format { automatic, csv, json };
enum class BesselMode { direct, asymptotic, both };

std::string_view to_string(Task t);
std::optional<Task> task_from_string(std::string_view s);

// Intensity always carries its unit; bare numbers are rejected.
struct Intensity {
    double value = 0.0;
    bool atomic_units = false;  // false: W/cm^2

    double au() const;
};

// Parses "1e14 W/cm2", "1e14W/cm^2", "0.02 au", "0.02 a.u.".
std::optional<Intensity> parse_intensity(std::string_view text);

// Parses "lo..hi".
std::optional<Range> parse_range(std::string_view text);

struct LaserConfig {
    std::optional<double> omega;
    std::optional<double> up;
    std::optional<double> e0;
    std::optional<Intensity> intensity;
    Polarization polarization = Polarization::linear;
};

struct AtomConfig {
    StateKind kind = StateKind::hydrogenic_1s;
    double eb = 0.5;
    std::optional<double> z_eff;     // derived from eb and principal_n when absent
    std::optional<int> principal_n;
    bool average_m = true;
};

struct ToleranceConfig {
    double tail_eps = 1e-8;
    double threshold = 10.0;
    int quad_order = 0;
    double rel_tol = 1e-6;
    int azimuth_points = 16;
    int max_order = 4096;
};

struct RateConfig {
    std::vector<double> theta;  // explicit angles; empty means n_theta uniform points on [0, pi]
    int n_theta = 19;
    double phi = 0.0;
    LinearAngleAxis linear_axis = LinearAngleAxis::polarization;
    int asymptotic_from_order = 0;
};

struct RegimeConfig {
    Range omega{1e-3, 2.0};
    Range intensity_wcm2{1e10, 1e20};
    std::size_t n_omega = 64;
    std::size_t n_intensity = 64;
    bool log_spacing = true;
    std::vector<double> gamma_k_lines{0.1, 0.3, 1.0};
};

struct MomentumConfig {
    double p_par_max = 1.5;
    double p_perp_max = 1.5;
    std::size_t n_par = 101;
    std::size_t n_perp = 101;
    std::optional<double> kernel_width;  // absent: omega / 2
};

struct BesselConfig {
    int n = 0;
    std::optional<double> x;
    std::optional<double> u;  // u and v select the two-argument function
    std::optional<double> v;
    BesselMode method = BesselMode::direct;
};

struct SweepConfig {
    Range gamma_k{0.2, 0.5};
    double beta0_max = 0.1;
    int delta_points = 16;
    std::string observable = "lowest_channel";  // or "total_rate"
};

struct FitConfig {
    std::vector<RateSample> samples;
    std::vector<double> weights;
    std::optional<SweepConfig> sweep;  // used when samples is empty
};

struct OutputConfig {
    std::string path = "-";  // "-" is standard output
    Format format = Format::automatic;
    std::string polylines_path;  // regime-map; defaults to <path>.polylines.json
};

struct RunConfig {
    Task task = Task::params;
    LaserConfig laser;
    AtomConfig atom;
    ToleranceConfig tolerances;
    RateConfig rate;
    RegimeConfig regime_map;
    MomentumConfig momentum_map;
    BesselConfig bessel;
    FitConfig fit;
    OutputConfig output;
};

struct Issue {
    std::string path;     // dotted key path, e.g. "laser.omega"
    std::string message;
};

class ConfigParseError : public std::runtime_error {
public:
    ConfigParseError(const std::string& what, std::size_t line, std::size_t column)
        : std::runtime_error(what), line_(line), column_(column) {}
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

struct ConfigResult {
    std::optional<RunConfig> config;
    std::vector<Issue> issues;
    RunConfig partial;  // everything that did read cleanly, for further checks

    bool ok() const { return config.has_value(); }
};

// Reads a JSON document, collecting every problem before giving up.
// Throws ConfigParseError on malformed syntax.
ConfigResult parse_config(std::string_view text);

// Same, from an already parsed document.
ConfigResult config_from_json(const nlohmann::json& doc);

// Physical and structural checks, also collected. Run after flag overrides.
std::vector<Issue> validate(const RunConfig& cfg);

// Canonical form; parse_config(to_json(cfg).dump()) reproduces cfg.
nlohmann::json to_json(const RunConfig& cfg);

std::string config_hash(const RunConfig& cfg);

// Published schema, also listing every CSV column.
nlohmann::json schema();

std::string format_issues(const std::vector<Issue>& issues);

// Appends the issues of `more` whose paths are not already reported.
void merge_issues(std::vector<Issue>& into, const std::vector<Issue>& more);

}  // namespace sfi::cli

namespace sfi::cli {

LaserInput resolve_laser(const LaserConfig& laser);
BoundStateModel resolve_state(const AtomConfig& atom);

}  // namespace sfi::cli
