#include "sfi_cli/run.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "sfi/bessel.hpp"
#include "sfi/constants.hpp"
#include "sfi/errors.hpp"
#include "sfi/factors.hpp"
#include "sfi/momentum_map.hpp"
#include "sfi/rates.hpp"
#include "sfi/serialize.hpp"
#include "sfi/sweep.hpp"

namespace sfi::cli {

using nlohmann::json;

namespace {

struct Artifact {
    std::string text;
    std::string polylines;  // regime-map CSV runs only
};

Format effective_format(const RunConfig& cfg) {
    if (cfg.output.format != Format::automatic) return cfg.output.format;
    switch (cfg.task) {
        case Task::params:
        case Task::bessel:
        case Task::fit:
            return Format::json;
        default:
            return Format::csv;
    }
}

OutputMeta make_meta(const RunConfig& cfg, json field = nullptr) {
    OutputMeta m;
    m.task = std::string(to_string(cfg.task));
    m.config_hash = config_hash(cfg);
    m.field = std::move(field);
    return m;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string json_cell(const json& v) {
    if (v.is_number_float()) return format_double(v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

RateOptions rate_options(const RunConfig& cfg) {
    RateOptions o;
    o.tail_eps = cfg.tolerances.tail_eps;
    o.linear_axis = cfg.rate.linear_axis;
    o.asymptotic_from_order = cfg.rate.asymptotic_from_order;
    return o;
}

QuadSpec quad_spec(const RunConfig& cfg) {
    QuadSpec q;
    q.order = cfg.tolerances.quad_order;
    q.azimuth_points = cfg.tolerances.azimuth_points;
    q.rel_tol = cfg.tolerances.rel_tol;
    q.max_order = cfg.tolerances.max_order;
    return q;
}

FieldParams field_of(const RunConfig& cfg) { return derive_params(resolve_laser(cfg.laser), cfg.atom.eb); }

Artifact do_params(const RunConfig& cfg, Format fmt) {
    const FieldParams fp = field_of(cfg);
    const ConditionReport rep = tunneling_conditions(fp, cfg.tolerances.threshold);
    const RegimeCell cell = classify_regime(fp.omega, fp.intensity, fp.eb);
    const OutputMeta meta = make_meta(cfg, to_json(fp));
    json data = {{"field", to_json(fp)},
                 {"intensity_wcm2", constants::au_to_wcm2(fp.intensity)},
                 {"conditions", to_json(rep)},
                 {"threshold_order", threshold_order(fp)},
                 {"regime", std::string(to_string(cell.label))}};
    if (fmt == Format::json) return {dump({{"meta", meta_json(meta)}, {"data", data}}), {}};

    std::ostringstream os;
    os << csv_meta_block(meta) << "key,value\n";
    for (auto it = data["field"].begin(); it != data["field"].end(); ++it)
        os << it.key() << ',' << json_cell(it.value()) << '\n';
    os << "intensity_wcm2," << json_cell(data["intensity_wcm2"]) << '\n';
    for (auto it = data["conditions"].begin(); it != data["conditions"].end(); ++it)
        os << "conditions." << it.key() << ',' << json_cell(it.value()) << '\n';
    os << "threshold_order," << threshold_order(fp) << '\n';
    os << "regime," << to_string(cell.label) << '\n';
    return {os.str(), {}};
}

Artifact do_regime_map(const RunConfig& cfg, Format fmt, unsigned threads) {
    const auto& m = cfg.regime_map;
    const RegimeMap map = regime_map(m.omega, m.intensity_wcm2, {m.n_omega, m.n_intensity, m.log_spacing},
                                     cfg.atom.eb, m.gamma_k_lines, threads);
    OutputMeta meta = make_meta(cfg);
    meta.extra = {{"eb", cfg.atom.eb},
                  {"n_omega", m.n_omega},
                  {"n_intensity", m.n_intensity},
                  {"log_spacing", m.log_spacing}};
    const json doc = regime_json(map, meta);
    if (fmt == Format::json) return {dump(doc), {}};
    return {regime_csv(map, meta), dump({{"meta", doc["meta"]}, {"data", {{"polylines", doc["data"]["polylines"]}}}})};
}

Artifact do_rate(const RunConfig& cfg, Format fmt) {
    const FieldParams fp = field_of(cfg);
    const BoundStateModel st = resolve_state(cfg.atom);
    const RateOptions opt = rate_options(cfg);

    std::vector<double> thetas = cfg.rate.theta;
    if (thetas.empty()) {
        const int n = cfg.rate.n_theta;
        for (int k = 0; k < n; ++k) thetas.push_back(n == 1 ? 0.5 * constants::pi : constants::pi * k / (n - 1));
    }
    std::vector<AngularSample> samples;
    for (double th : thetas) samples.push_back({th, cfg.rate.phi, dw_domega(fp, st, th, cfg.rate.phi, opt)});

    const TotalRate tr = total_rate(fp, st, quad_spec(cfg), opt);
    OutputMeta meta = make_meta(cfg, to_json(fp));
    meta.extra = {{"state", to_json(st)},
                  {"threshold_order", threshold_order(fp)},
                  {"channels", tr.spectrum.size()},
                  {"total_rate", tr.w},
                  {"total_rate_half_order", tr.previous},
                  {"quad_order", tr.order}};
    if (fmt == Format::json) return {dump(angular_json(samples, meta)), {}};
    return {angular_csv(samples, meta), {}};
}

Artifact do_spectrum(const RunConfig& cfg, Format fmt) {
    const FieldParams fp = field_of(cfg);
    const BoundStateModel st = resolve_state(cfg.atom);
    const TotalRate tr = total_rate(fp, st, quad_spec(cfg), rate_options(cfg));
    OutputMeta meta = make_meta(cfg, to_json(fp));
    meta.extra = {{"state", to_json(st)},
                  {"total_rate", tr.w},
                  {"total_rate_half_order", tr.previous},
                  {"quad_order", tr.order}};
    if (fmt == Format::json) return {dump(spectrum_json(tr.spectrum, meta)), {}};
    return {spectrum_csv(tr.spectrum, meta), {}};
}

Artifact do_momentum_map(const RunConfig& cfg, Format fmt, unsigned threads) {
    const FieldParams fp = field_of(cfg);
    const BoundStateModel st = resolve_state(cfg.atom);
    const auto& m = cfg.momentum_map;
    MomentumGridSpec spec;
    spec.p_par_max = m.p_par_max;
    spec.p_perp_max = m.p_perp_max;
    spec.n_par = m.n_par;
    spec.n_perp = m.n_perp;
    spec.kernel_width = m.kernel_width.value_or(-1.0);
    const RateGrid g = momentum_map(fp, st, spec, rate_options(cfg), threads);
    OutputMeta meta = make_meta(cfg, to_json(fp));
    meta.extra = {{"state", to_json(st)}, {"kernel_width", g.kernel_width}};
    if (fmt == Format::json) return {dump(rate_grid_json(g, meta)), {}};
    return {rate_grid_csv(g, meta), {}};
}

Artifact do_bessel(const RunConfig& cfg, Format fmt) {
    const auto& b = cfg.bessel;
    const OutputMeta meta = make_meta(cfg);
    json data;
    std::ostringstream os;
    if (b.u) {
        const double val = gen_bessel_j(b.n, *b.u, *b.v);
        data = {{"n", b.n}, {"u", *b.u}, {"v", *b.v}, {"direct", {{"value", val}}}};
        os << csv_meta_block(meta) << "n,u,v,direct\n"
           << b.n << ',' << format_double(*b.u) << ',' << format_double(*b.v) << ',' << format_double(val) << '\n';
    } else {
        const double x = *b.x;
        data = {{"n", b.n}, {"x", x}};
        std::string direct_cell, asym_cell, dev_cell;
        double direct = 0.0;
        if (b.method != BesselMode::asymptotic) {
            const BesselEval e = bessel_j_eval(b.n, x);
            const char* method = e.method == BesselMethod::series       ? "series"
                                 : e.method == BesselMethod::recurrence ? "recurrence"
                                 : e.method == BesselMethod::quadrature ? "quadrature"
                                                                        : "asymptotic";
            direct = e.value;
            data["direct"] = {{"value", e.value}, {"method", method}, {"est_rel_error", e.est_error}};
            direct_cell = format_double(e.value);
        }
        if (b.method != BesselMode::direct) {
            const ScaledValue a = bessel_asymptotic(b.n, x);
            data["asymptotic"] = {{"value", a.value},
                                  {"log_magnitude", a.log_magnitude},
                                  {"sign", a.sign},
                                  {"underflow", a.underflow},
                                  {"est_rel_error", bessel_asymptotic_error_estimate(b.n, x)}};
            asym_cell = format_double(a.value);
            if (b.method == BesselMode::both) {
                // compare in log space so underflowed values still have a deviation
                const double log_direct = std::log(std::abs(direct));
                const double diff = a.log_magnitude - log_direct;
                const bool same_sign = (a.sign < 0) == (direct < 0);
                const double dev = same_sign ? std::expm1(diff) : -std::exp(diff) - 1.0;
                data["rel_deviation"] = dev;
                dev_cell = format_double(dev);
            }
        }
        os << csv_meta_block(meta) << "n,x,direct,asymptotic,rel_deviation\n"
           << b.n << ',' << format_double(x) << ',' << direct_cell << ',' << asym_cell << ',' << dev_cell << '\n';
    }
    if (fmt == Format::json) return {dump({{"meta", meta_json(meta)}, {"data", data}}), {}};
    return {os.str(), {}};
}

Artifact do_fit(const RunConfig& cfg, Format fmt, unsigned threads) {
    std::vector<RateSample> samples = cfg.fit.samples;
    std::vector<double> weights = cfg.fit.weights;
    OutputMeta meta = make_meta(cfg);
    json points = json::array();
    if (samples.empty()) {
        const auto& s = *cfg.fit.sweep;
        SweepSpec spec;
        spec.omega = *cfg.laser.omega;
        spec.state = resolve_state(cfg.atom);
        spec.gamma_k = s.gamma_k;
        spec.beta0_max = s.beta0_max;
        spec.delta_points = s.delta_points;
        spec.rate = rate_options(cfg);
        spec.quad = quad_spec(cfg);
        const auto obs = s.observable == "total_rate" ? SweepObservable::total_rate : SweepObservable::lowest_channel;
        const auto pts = channel_averaged_sweep(spec, cfg.laser.polarization, obs, threads);
        samples = to_samples(pts);
        for (const auto& p : pts)
            points.push_back({{"n", p.n}, {"up", p.mid.up}, {"gamma_k", p.mid.gamma_k}, {"beta0", p.mid.beta0},
                              {"field", p.mid.e0}, {"rate", p.value}});
        meta.extra["state"] = to_json(spec.state);
        meta.extra["polarization"] = std::string(sfi::to_string(cfg.laser.polarization));
        meta.extra["tunneling_c"] = 2.0 / 3.0 * std::pow(2.0 * spec.state.eb, 1.5);
    }
    const ExponentFit fit = tunneling_exponent_fit(samples, weights);
    meta.extra["c"] = fit.c;
    meta.extra["a"] = fit.a;
    meta.extra["residual_norm"] = fit.residual_norm;
    meta.extra["r_squared"] = fit.r_squared;
    meta.extra["samples"] = fit.samples;

    if (fmt == Format::json) {
        json rows = json::array();
        for (const auto& s : samples)
            rows.push_back({{"field_au", s.field}, {"rate", s.rate}, {"ln_rate_model", fit.a - fit.c / s.field}});
        json data = {{"c", fit.c},
                     {"a", fit.a},
                     {"residual_norm", fit.residual_norm},
                     {"r_squared", fit.r_squared},
                     {"samples", rows}};
        if (!points.empty()) data["sweep"] = points;
        return {dump({{"meta", meta_json(meta)}, {"data", data}}), {}};
    }
    std::ostringstream os;
    os << csv_meta_block(meta) << "field_au,rate,ln_rate_model\n";
    for (const auto& s : samples)
        os << format_double(s.field) << ',' << format_double(s.rate) << ',' << format_double(fit.a - fit.c / s.field)
           << '\n';
    return {os.str(), {}};
}

bool write_file(const std::string& path, const std::string& text, std::ostream& err) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        err << "error: cannot open " << path << " for writing\n";
        return false;
    }
    f << text;
    f.close();
    if (!f) {
        err << "error: failed writing " << path << '\n';
        return false;
    }
    return true;
}

}  // namespace

unsigned threads_from_env() {
    const char* s = std::getenv("SFI_THREADS");
    if (!s || !*s) return 1;
    char* end = nullptr;
    const long v = std::strtol(s, &end, 10);
    if (*end != '\0' || v < 1) return 1;
    return static_cast<unsigned>(std::min(v, 256L));
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err, unsigned threads) {
    if (auto issues = validate(cfg); !issues.empty()) {
        err << format_issues(issues);
        return exit_validation;
    }
    const Format fmt = effective_format(cfg);
    Artifact art;
    try {
        switch (cfg.task) {
            case Task::params: art = do_params(cfg, fmt); break;
            case Task::regime_map: art = do_regime_map(cfg, fmt, threads); break;
            case Task::rate: art = do_rate(cfg, fmt); break;
            case Task::spectrum: art = do_spectrum(cfg, fmt); break;
            case Task::momentum_map: art = do_momentum_map(cfg, fmt, threads); break;
            case Task::bessel: art = do_bessel(cfg, fmt); break;
            case Task::fit: art = do_fit(cfg, fmt, threads); break;
        }
    } catch (const AccuracyError& e) {
        err << "accuracy error: " << e.what() << '\n';
        if (!e.estimates().empty()) {
            err << "  estimates:";
            for (double v : e.estimates()) err << ' ' << format_double(v);
            err << '\n';
        }
        return exit_accuracy;
    } catch (const InvariantViolation& e) {
        err << "accuracy error: invariant violated: " << e.what() << '\n';
        return exit_accuracy;
    } catch (const DomainError& e) {
        err << "validation error: " << e.what() << '\n';
        return exit_validation;
    } catch (const RangeError& e) {
        err << "validation error: " << e.what() << '\n';
        return exit_validation;
    } catch (const FitError& e) {
        err << "validation error: fit: " << e.what() << '\n';
        return exit_validation;
    }

    if (cfg.output.path == "-") {
        out << art.text;
        if (!art.polylines.empty() && !cfg.output.polylines_path.empty())
            if (!write_file(cfg.output.polylines_path, art.polylines, err)) return exit_validation;
        return exit_ok;
    }
    if (!write_file(cfg.output.path, art.text, err)) return exit_validation;
    if (!art.polylines.empty()) {
        const std::string p =
            cfg.output.polylines_path.empty() ? cfg.output.path + ".polylines.json" : cfg.output.polylines_path;
        if (!write_file(p, art.polylines, err)) return exit_validation;
    }
    return exit_ok;
}

}  // namespace sfi::cli
