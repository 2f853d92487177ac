#include "sfi/bound_states.hpp"

#include <cmath>
#include <string>

#include "sfi/constants.hpp"
#include "sfi/errors.hpp"

namespace sfi {
namespace {

using namespace std::complex_literals;

// Radial momentum functions F_nl(p); phi = (-i)^l F_nl(p) Y_lm(p_hat).
double radial_1s(double z, double p) {
    const double d = p * p + z * z;
    return 4.0 * std::sqrt(2.0 / constants::pi) * std::pow(z, 2.5) / (d * d);
}

double radial_2p(double z, double p) {
    const double d = 4.0 * p * p + z * z;
    return 128.0 * std::pow(z, 3.5) * p / (std::sqrt(3.0 * constants::pi) * d * d * d);
}

}  // namespace

std::string_view to_string(StateKind k) {
    switch (k) {
        case StateKind::hydrogenic_1s: return "hydrogenic_1s";
        case StateKind::hydrogenic_2p_m0: return "hydrogenic_2p_m0";
        case StateKind::hydrogenic_2p_mplus1: return "hydrogenic_2p_m+1";
        case StateKind::hydrogenic_2p_mminus1: return "hydrogenic_2p_m-1";
    }
    return "unknown";
}

StateKind state_kind_from_string(std::string_view s) {
    if (s == "hydrogenic_1s") return StateKind::hydrogenic_1s;
    if (s == "hydrogenic_2p_m0") return StateKind::hydrogenic_2p_m0;
    if (s == "hydrogenic_2p_m+1") return StateKind::hydrogenic_2p_mplus1;
    if (s == "hydrogenic_2p_m-1") return StateKind::hydrogenic_2p_mminus1;
    throw DomainError("kind", "unknown bound state \"" + std::string(s) +
                                  "\" (expected hydrogenic_1s, hydrogenic_2p_m0, "
                                  "hydrogenic_2p_m+1 or hydrogenic_2p_m-1)");
}

BoundStateModel BoundStateModel::make(StateKind kind, double z_eff, double eb, bool average_m) {
    if (!(z_eff > 0.0) || !std::isfinite(z_eff))
        throw DomainError("z_eff", "effective charge must be positive");
    if (!(eb > 0.0) || !std::isfinite(eb))
        throw DomainError("eb", "binding energy must be positive");
    return {kind, z_eff, eb, average_m};
}

std::complex<double> momentum_wavefunction(const BoundStateModel& state, const Vec3& p) {
    const double pmag = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    if (state.kind == StateKind::hydrogenic_1s)
        return radial_1s(state.z_eff, pmag) / std::sqrt(4.0 * constants::pi);

    // (-i) F_21(p) Y_1m(p_hat), written with Cartesian components so p = 0 is regular.
    const double f_over_p = pmag > 0.0 ? radial_2p(state.z_eff, pmag) / pmag
                                       : 128.0 * std::pow(state.z_eff, -2.5) /
                                             std::sqrt(3.0 * constants::pi);
    const double y0 = std::sqrt(3.0 / (4.0 * constants::pi));
    const double y1 = std::sqrt(3.0 / (8.0 * constants::pi));
    std::complex<double> angular;
    switch (state.kind) {
        case StateKind::hydrogenic_2p_m0: angular = y0 * p[2]; break;
        case StateKind::hydrogenic_2p_mplus1: angular = -y1 * (p[0] + 1i * p[1]); break;
        case StateKind::hydrogenic_2p_mminus1: angular = y1 * (p[0] - 1i * p[1]); break;
        default: break;
    }
    return -1i * f_over_p * angular;
}

double momentum_density(const BoundStateModel& state, double p, double cos_to_axis) {
    if (state.kind == StateKind::hydrogenic_1s) {
        const double f = radial_1s(state.z_eff, p);
        return f * f / (4.0 * constants::pi);
    }
    const double f = radial_2p(state.z_eff, p);
    const double f2 = f * f;
    if (state.average_m) return f2 / (4.0 * constants::pi);
    const double c2 = cos_to_axis * cos_to_axis;
    if (state.kind == StateKind::hydrogenic_2p_m0) return f2 * 3.0 / (4.0 * constants::pi) * c2;
    return f2 * 3.0 / (8.0 * constants::pi) * (1.0 - c2);
}

double max_momentum_density(const BoundStateModel& state, double p) {
    if (state.kind == StateKind::hydrogenic_1s || state.average_m) return momentum_density(state, p, 0.0);
    return state.kind == StateKind::hydrogenic_2p_m0 ? momentum_density(state, p, 1.0)
                                                     : momentum_density(state, p, 0.0);
}

double effective_charge_for(double eb, int principal_n) {
    if (!(eb > 0.0)) throw DomainError("eb", "binding energy must be positive");
    if (principal_n != 1 && principal_n != 2)
        throw DomainError("principal_n", "only n = 1 and n = 2 hydrogenic states are supported");
    return principal_n * std::sqrt(2.0 * eb);
}

}  // namespace sfi
