#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sfi {

enum class Polarization { linear, circular };

std::string_view to_string(Polarization p);
Polarization polarization_from_string(std::string_view s);

// Photon energy plus exactly one drive quantity; the other one is derived.
//
// Peak field and ponderomotive energy are related by
//   linear:   U_p = E0^2 / (4 omega^2)
//   circular: U_p = E0^2 / (2 omega^2)   (E0 = constant field magnitude)
// so that in both cases U_p = I / (4 omega^2) with I in atomic units.
struct LaserInput {
    enum class Drive { ponderomotive, peak_field };

    double omega = 0.0;
    Drive drive = Drive::ponderomotive;
    double drive_value = 0.0;
    Polarization polarization = Polarization::linear;

    static LaserInput from_ponderomotive(double omega, double up,
                                         Polarization pol = Polarization::linear) {
        return {omega, Drive::ponderomotive, up, pol};
    }
    static LaserInput from_peak_field(double omega, double e0,
                                      Polarization pol = Polarization::linear) {
        return {omega, Drive::peak_field, e0, pol};
    }
};

// Derived laser/atom parameter set, atomic units.
struct FieldParams {
    Polarization polarization = Polarization::linear;
    double omega = 0.0;
    double up = 0.0;        // ponderomotive energy
    double e0 = 0.0;        // peak field
    double intensity = 0.0; // a.u., I = 4 omega^2 U_p
    double z = 0.0;         // U_p / omega
    double z1 = 0.0;        // 2 U_p / E_B
    double gamma_k = 0.0;   // 1 / sqrt(z1)
    double alpha0_c = 0.0;  // circular orbit radius sqrt(2 z / omega)
    double alpha0_l = 0.0;  // linear quiver amplitude 2 sqrt(z / omega)
    double beta0 = 0.0;     // z / (2c)
    double z_f = 0.0;       // 2 U_p / c^2
    double eb = 0.0;        // binding energy

    // Ratio E_B / omega, the photon count needed to bridge the binding energy.
    double eb_over_omega() const { return eb / omega; }
};

double ponderomotive_from_field(double omega, double e0, Polarization pol);
double field_from_ponderomotive(double omega, double up, Polarization pol);

// Throws DomainError naming the offending field for omega <= 0, E_B <= 0 or a
// negative drive value.
FieldParams derive_params(const LaserInput& input, double eb);

struct ConditionReport {
    double z1 = 0.0;
    double eb_over_omega = 0.0;
    double two_z_over_z1 = 0.0;
    double gamma_k = 0.0;
    double threshold = 10.0;
    bool strong_field = false;  // z1 >> 1
    bool many_photon = false;   // E_B >> omega
    double identity_residual = 0.0;  // |2z/z1 - E_B/omega|
};

ConditionReport tunneling_conditions(const FieldParams& fp, double threshold = 10.0);

enum class Regime { oasis, magnetic, relativistic, high_frequency };

std::string_view to_string(Regime r);

struct RegimeCell {
    double omega = 0.0;
    double intensity_au = 0.0;
    double intensity_wcm2 = 0.0;
    double up = 0.0;
    double beta0 = 0.0;
    double z_f = 0.0;
    double gamma_k = 0.0;
    Regime label = Regime::oasis;
};

// Intensity in atomic units; U_p = I / (4 omega^2).
RegimeCell classify_regime(double omega, double intensity_au, double eb);

struct GridSpec {
    std::size_t n_omega = 64;
    std::size_t n_intensity = 64;
    bool log_spacing = true;
};

struct Range {
    double lo = 0.0;
    double hi = 0.0;
};

struct Vertex {
    double omega = 0.0;
    double intensity_wcm2 = 0.0;
    double up = 0.0;
};

struct Polyline {
    std::string name;
    std::vector<Vertex> vertices;
};

struct RegimeMap {
    std::vector<double> omega_axis;        // a.u.
    std::vector<double> intensity_axis;    // W/cm^2
    std::vector<RegimeCell> cells;         // intensity-major: cells[i * n_omega + j]
    std::vector<Polyline> polylines;
    double eb = 0.0;

    const RegimeCell& at(std::size_t i_intensity, std::size_t j_omega) const {
        return cells[i_intensity * omega_axis.size() + j_omega];
    }
};

std::vector<double> axis_points(Range r, std::size_t n, bool log_spacing);

// Classifies every grid point and emits the analytic boundary curves
// beta0 = 1, z_f = 1, gamma_K = const (one per entry) and omega = E_B.
// Intensity range in W/cm^2.
RegimeMap regime_map(Range omega_range, Range intensity_range_wcm2, const GridSpec& grid,
                     double eb, const std::vector<double>& gamma_k_lines = {0.1, 0.3, 1.0},
                     unsigned threads = 1);

}  // namespace sfi
