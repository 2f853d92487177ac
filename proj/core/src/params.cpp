#include "sfi/params.hpp"

#include <cmath>

#include "sfi/constants.hpp"
#include "sfi/errors.hpp"
#include "sfi/parallel.hpp"

namespace sfi {

using constants::speed_of_light;

std::string_view to_string(Polarization p) {
    return p == Polarization::linear ? "linear" : "circular";
}

Polarization polarization_from_string(std::string_view s) {
    if (s == "linear") return Polarization::linear;
    if (s == "circular") return Polarization::circular;
    throw DomainError("polarization", "expected \"linear\" or \"circular\", got \"" +
                                          std::string(s) + "\"");
}

double ponderomotive_from_field(double omega, double e0, Polarization pol) {
    const double k = pol == Polarization::linear ? 4.0 : 2.0;
    return e0 * e0 / (k * omega * omega);
}

double field_from_ponderomotive(double omega, double up, Polarization pol) {
    const double k = pol == Polarization::linear ? 4.0 : 2.0;
    return omega * std::sqrt(k * up);
}

FieldParams derive_params(const LaserInput& input, double eb) {
    if (!(input.omega > 0.0) || !std::isfinite(input.omega))
        throw DomainError("omega", "photon energy must be positive and finite");
    if (!(eb > 0.0) || !std::isfinite(eb))
        throw DomainError("eb", "binding energy must be positive and finite");
    const bool by_up = input.drive == LaserInput::Drive::ponderomotive;
    if (!(input.drive_value >= 0.0) || !std::isfinite(input.drive_value))
        throw DomainError(by_up ? "up" : "e0", "drive value must be non-negative and finite");

    FieldParams fp;
    fp.polarization = input.polarization;
    fp.omega = input.omega;
    fp.eb = eb;
    if (by_up) {
        fp.up = input.drive_value;
        fp.e0 = field_from_ponderomotive(fp.omega, fp.up, fp.polarization);
    } else {
        fp.e0 = input.drive_value;
        fp.up = ponderomotive_from_field(fp.omega, fp.e0, fp.polarization);
    }
    fp.intensity = 4.0 * fp.omega * fp.omega * fp.up;
    fp.z = fp.up / fp.omega;
    fp.z1 = 2.0 * fp.up / eb;
    fp.gamma_k = 1.0 / std::sqrt(fp.z1);
    fp.alpha0_c = std::sqrt(2.0 * fp.z / fp.omega);
    fp.alpha0_l = 2.0 * std::sqrt(fp.z / fp.omega);
    fp.beta0 = fp.z / (2.0 * speed_of_light);
    fp.z_f = 2.0 * fp.up / (speed_of_light * speed_of_light);
    return fp;
}

ConditionReport tunneling_conditions(const FieldParams& fp, double threshold) {
    ConditionReport r;
    r.threshold = threshold;
    r.z1 = fp.z1;
    r.eb_over_omega = fp.eb_over_omega();
    r.gamma_k = fp.gamma_k;
    // 2z/z1 has the finite limit E_B/omega as U_p -> 0.
    r.two_z_over_z1 = fp.z1 > 0.0 ? 2.0 * fp.z / fp.z1 : r.eb_over_omega;
    r.identity_residual = std::abs(r.two_z_over_z1 - r.eb_over_omega);
    r.strong_field = r.z1 >= threshold;
    r.many_photon = r.eb_over_omega >= threshold;
    return r;
}

std::string_view to_string(Regime r) {
    switch (r) {
        case Regime::oasis: return "oasis";
        case Regime::magnetic: return "magnetic";
        case Regime::relativistic: return "relativistic";
        case Regime::high_frequency: return "high-frequency";
    }
    return "unknown";
}

RegimeCell classify_regime(double omega, double intensity_au, double eb) {
    if (!(omega > 0.0)) throw DomainError("omega", "photon energy must be positive");
    if (!(intensity_au >= 0.0)) throw DomainError("intensity", "intensity must be non-negative");
    if (!(eb > 0.0)) throw DomainError("eb", "binding energy must be positive");

    RegimeCell cell;
    cell.omega = omega;
    cell.intensity_au = intensity_au;
    cell.intensity_wcm2 = constants::au_to_wcm2(intensity_au);
    cell.up = intensity_au / (4.0 * omega * omega);
    const double z = cell.up / omega;
    cell.beta0 = z / (2.0 * speed_of_light);
    cell.z_f = 2.0 * cell.up / (speed_of_light * speed_of_light);
    cell.gamma_k = std::sqrt(eb / (2.0 * cell.up));

    if (cell.z_f >= 1.0)
        cell.label = Regime::relativistic;
    else if (cell.beta0 >= 1.0)
        cell.label = Regime::magnetic;
    else if (omega >= eb)
        cell.label = Regime::high_frequency;
    else
        cell.label = Regime::oasis;
    return cell;
}

std::vector<double> axis_points(Range r, std::size_t n, bool log_spacing) {
    if (n < 2) throw DomainError("grid", "at least two points per axis are required");
    if (!(r.lo > 0.0) || !(r.hi > r.lo))
        throw DomainError("range", "range must satisfy 0 < lo < hi");
    std::vector<double> out(n);
    if (log_spacing) {
        const double a = std::log(r.lo);
        const double b = std::log(r.hi);
        for (std::size_t i = 0; i < n; ++i)
            out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    } else {
        for (std::size_t i = 0; i < n; ++i)
            out[i] = r.lo + (r.hi - r.lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    // Pin the endpoints so they are reproduced exactly.
    out.front() = r.lo;
    out.back() = r.hi;
    return out;
}

namespace {

// Boundary curves are all of the form U_p = f(omega); I = 4 omega^2 U_p.
template <typename UpOfOmega>
Polyline sample_curve(std::string name, const std::vector<double>& omegas, UpOfOmega up_of) {
    Polyline line{std::move(name), {}};
    line.vertices.reserve(omegas.size());
    for (double w : omegas) {
        const double up = up_of(w);
        line.vertices.push_back({w, constants::au_to_wcm2(4.0 * w * w * up), up});
    }
    return line;
}

std::string number_label(double v) {
    std::string s = std::to_string(v);
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

}  // namespace

RegimeMap regime_map(Range omega_range, Range intensity_range_wcm2, const GridSpec& grid,
                     double eb, const std::vector<double>& gamma_k_lines, unsigned threads) {
    if (!(omega_range.hi > omega_range.lo) || !(omega_range.lo > 0.0))
        throw DomainError("omega", "empty or non-positive frequency range");
    if (!(intensity_range_wcm2.hi > intensity_range_wcm2.lo) || !(intensity_range_wcm2.lo > 0.0))
        throw DomainError("intensity", "empty or non-positive intensity range");
    if (!(eb > 0.0)) throw DomainError("eb", "binding energy must be positive");

    RegimeMap map;
    map.eb = eb;
    map.omega_axis = axis_points(omega_range, grid.n_omega, grid.log_spacing);
    map.intensity_axis = axis_points(intensity_range_wcm2, grid.n_intensity, grid.log_spacing);

    const std::size_t nw = map.omega_axis.size();
    map.cells.resize(nw * map.intensity_axis.size());
    parallel_for(map.cells.size(), threads, [&](std::size_t k) {
        const std::size_t i = k / nw;
        const std::size_t j = k % nw;
        map.cells[k] = classify_regime(map.omega_axis[j],
                                       constants::wcm2_to_au(map.intensity_axis[i]), eb);
    });

    constexpr double c = speed_of_light;
    // beta0 = z / 2c = 1  <=>  U_p = 2 c omega
    map.polylines.push_back(
        sample_curve("beta0=1", map.omega_axis, [](double w) { return 2.0 * c * w; }));
    // z_f = 2 U_p / c^2 = 1
    map.polylines.push_back(
        sample_curve("z_f=1", map.omega_axis, [](double) { return 0.5 * c * c; }));
    for (double g : gamma_k_lines) {
        if (!(g > 0.0)) throw DomainError("gamma_k_lines", "Keldysh parameter must be positive");
        // gamma_K^2 = E_B / (2 U_p)
        map.polylines.push_back(sample_curve("gamma_K=" + number_label(g), map.omega_axis,
                                             [=](double) { return eb / (2.0 * g * g); }));
    }

    // omega = E_B: vertical line across the intensity axis.
    Polyline vertical{"omega=E_B", {}};
    for (double i_wcm2 : map.intensity_axis) {
        const double up = constants::wcm2_to_au(i_wcm2) / (4.0 * eb * eb);
        vertical.vertices.push_back({eb, i_wcm2, up});
    }
    map.polylines.push_back(std::move(vertical));
    return map;
}

}  // namespace sfi
