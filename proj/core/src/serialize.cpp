#include "sfi/serialize.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

#include "sfi/version.hpp"

namespace sfi {

using nlohmann::json;

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, v >>= 4) out[static_cast<std::size_t>(i)] = digits[v & 0xf];
    return out;
}

json to_json(const FieldParams& fp) {
    return {{"polarization", std::string(to_string(fp.polarization))},
            {"omega", fp.omega},
            {"up", fp.up},
            {"e0", fp.e0},
            {"intensity_au", fp.intensity},
            {"z", fp.z},
            {"z1", fp.z1},
            {"gamma_k", fp.gamma_k},
            {"alpha0_c", fp.alpha0_c},
            {"alpha0_l", fp.alpha0_l},
            {"beta0", fp.beta0},
            {"z_f", fp.z_f},
            {"eb", fp.eb}};
}

json to_json(const ConditionReport& r) {
    return {{"z1", r.z1},
            {"eb_over_omega", r.eb_over_omega},
            {"two_z_over_z1", r.two_z_over_z1},
            {"gamma_k", r.gamma_k},
            {"threshold", r.threshold},
            {"strong_field", r.strong_field},
            {"many_photon", r.many_photon},
            {"identity_residual", r.identity_residual}};
}

json to_json(const BoundStateModel& s) {
    return {{"kind", std::string(to_string(s.kind))},
            {"z_eff", s.z_eff},
            {"eb", s.eb},
            {"average_m", s.average_m}};
}

json to_json(const RegimeCell& c) {
    return {{"omega_au", c.omega},         {"intensity_wcm2", c.intensity_wcm2},
            {"beta0", c.beta0},            {"z_f", c.z_f},
            {"gamma_K", c.gamma_k},        {"label", std::string(to_string(c.label))}};
}

json meta_json(const OutputMeta& meta) {
    json m = {{"tool", "sfi"},
              {"version", std::string(version)},
              {"task", meta.task},
              {"config_hash", meta.config_hash},
              {"field", meta.field}};
    for (auto it = meta.extra.begin(); it != meta.extra.end(); ++it) m[it.key()] = it.value();
    return m;
}

std::string csv_meta_block(const OutputMeta& meta) {
    std::ostringstream os;
    os << "# tool: sfi " << version << '\n';
    os << "# task: " << meta.task << '\n';
    os << "# config_hash: " << meta.config_hash << '\n';
    if (!meta.field.is_null()) {
        for (auto it = meta.field.begin(); it != meta.field.end(); ++it) {
            os << "# field." << it.key() << ": ";
            if (it.value().is_number_float())
                os << format_double(it.value().get<double>());
            else if (it.value().is_string())
                os << it.value().get<std::string>();
            else
                os << it.value().dump();
            os << '\n';
        }
    }
    for (auto it = meta.extra.begin(); it != meta.extra.end(); ++it) {
        os << "# " << it.key() << ": ";
        if (it.value().is_number_float())
            os << format_double(it.value().get<double>());
        else if (it.value().is_string())
            os << it.value().get<std::string>();
        else
            os << it.value().dump();
        os << '\n';
    }
    return os.str();
}

std::string regime_csv(const RegimeMap& map, const OutputMeta& meta) {
    std::ostringstream os;
    os << csv_meta_block(meta);
    os << "omega_au,intensity_wcm2,beta0,z_f,gamma_K,label\n";
    for (const auto& c : map.cells) {
        os << format_double(c.omega) << ',' << format_double(c.intensity_wcm2) << ','
           << format_double(c.beta0) << ',' << format_double(c.z_f) << ','
           << format_double(c.gamma_k) << ',' << to_string(c.label) << '\n';
    }
    return os.str();
}

json regime_json(const RegimeMap& map, const OutputMeta& meta) {
    json cells = json::array();
    for (const auto& c : map.cells) cells.push_back(to_json(c));
    json lines = json::array();
    for (const auto& l : map.polylines) {
        json verts = json::array();
        for (const auto& v : l.vertices) verts.push_back({v.omega, v.intensity_wcm2, v.up});
        lines.push_back({{"name", l.name},
                         {"vertex_fields", {"omega_au", "intensity_wcm2", "up_au"}},
                         {"vertices", verts}});
    }
    return {{"meta", meta_json(meta)},
            {"data",
             {{"eb", map.eb},
              {"omega_axis", map.omega_axis},
              {"intensity_axis_wcm2", map.intensity_axis},
              {"cells", cells},
              {"polylines", lines}}}};
}

std::string spectrum_csv(const std::vector<SpectrumEntry>& s, const OutputMeta& meta) {
    std::ostringstream os;
    os << csv_meta_block(meta);
    os << "n,p_au,w_n\n";
    for (const auto& e : s) os << e.n << ',' << format_double(e.p) << ',' << format_double(e.w) << '\n';
    return os.str();
}

json spectrum_json(const std::vector<SpectrumEntry>& s, const OutputMeta& meta) {
    json rows = json::array();
    for (const auto& e : s) rows.push_back({{"n", e.n}, {"p_au", e.p}, {"w_n", e.w}});
    return {{"meta", meta_json(meta)}, {"data", rows}};
}

std::string angular_csv(const std::vector<AngularSample>& s, const OutputMeta& meta) {
    std::ostringstream os;
    os << csv_meta_block(meta);
    os << "theta_rad,phi_rad,dw_domega\n";
    for (const auto& a : s)
        os << format_double(a.theta) << ',' << format_double(a.phi) << ',' << format_double(a.rate) << '\n';
    return os.str();
}

json angular_json(const std::vector<AngularSample>& s, const OutputMeta& meta) {
    json rows = json::array();
    for (const auto& a : s) rows.push_back({{"theta_rad", a.theta}, {"phi_rad", a.phi}, {"dw_domega", a.rate}});
    return {{"meta", meta_json(meta)}, {"data", rows}};
}

std::string rate_grid_csv(const RateGrid& g, const OutputMeta& meta) {
    std::ostringstream os;
    os << csv_meta_block(meta);
    os << "p_par_au,p_perp_au,rate\n";
    for (std::size_t i = 0; i < g.p_perp.size(); ++i)
        for (std::size_t j = 0; j < g.p_par.size(); ++j)
            os << format_double(g.p_par[j]) << ',' << format_double(g.p_perp[i]) << ','
               << format_double(g.at(i, j)) << '\n';
    return os.str();
}

json rate_grid_json(const RateGrid& g, const OutputMeta& meta) {
    return {{"meta", meta_json(meta)},
            {"data",
             {{"p_par_au", g.p_par},
              {"p_perp_au", g.p_perp},
              {"layout", "values[i_perp][j_par]"},
              {"kernel_width", g.kernel_width},
              {"state", to_json(g.state)},
              {"values", g.values}}}};
}

const std::vector<CsvLayout>& csv_layouts() {
    static const std::vector<CsvLayout> layouts = {
        {"params",
         {{"key", "derived quantity, e.g. z, z1, gamma_K, beta0, z_f"},
          {"value", "its value, atomic units where dimensional"}}},
        {"regime-map",
         {{"omega_au", "photon energy, atomic units"},
          {"intensity_wcm2", "cycle-averaged intensity, W/cm^2"},
          {"beta0", "drift amplitude along propagation, z/(2c)"},
          {"z_f", "relativistic intensity parameter 2 U_p / c^2"},
          {"gamma_K", "Keldysh parameter sqrt(E_B / (2 U_p))"},
          {"label", "oasis | magnetic | relativistic | high-frequency"}}},
        {"spectrum",
         {{"n", "photon order of the channel"},
          {"p_au", "channel momentum, p^2/2 = n omega - U_p - E_B"},
          {"w_n", "angle-integrated partial rate, atomic units"}}},
        {"rate",
         {{"theta_rad", "polar angle of the photoelectron"},
          {"phi_rad", "azimuth of the photoelectron"},
          {"dw_domega", "differential rate dW/dOmega, atomic units"}}},
        {"momentum-map",
         {{"p_par_au", "momentum along the frame's polar axis"},
          {"p_perp_au", "momentum perpendicular to it, in the plotting plane"},
          {"rate", "energy-smoothed differential rate density"}}},
        {"fit",
         {{"field_au", "peak electric field"},
          {"rate", "rate sample entering the fit"},
          {"ln_rate_model", "fitted a - C/E"}}},
        {"bessel",
         {{"n", "order"},
          {"x", "argument"},
          {"direct", "J_n(x) by recurrence/series"},
          {"asymptotic", "large-order form (n > x only)"},
          {"rel_deviation", "asymptotic / direct - 1"}}},
    };
    return layouts;
}

}  // namespace sfi
