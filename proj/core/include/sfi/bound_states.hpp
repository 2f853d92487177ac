#pragma once

#include <array>
#include <complex>
#include <string_view>

namespace sfi {

enum class StateKind { hydrogenic_1s, hydrogenic_2p_m0, hydrogenic_2p_mplus1, hydrogenic_2p_mminus1 };

std::string_view to_string(StateKind k);
StateKind state_kind_from_string(std::string_view s);

// Field-free initial state. Momentum-space amplitudes use the symmetric
// transform phi(p) = (2 pi)^{-3/2} int d^3r exp(-i p.r) phi(r), quantization
// axis along +z of the momentum vector passed in.
struct BoundStateModel {
    StateKind kind = StateKind::hydrogenic_1s;
    double z_eff = 1.0;
    double eb = 0.5;
    // For 2p kinds: rate densities use |phi|^2 averaged over m = -1, 0, 1.
    bool average_m = true;

    static BoundStateModel hydrogen_1s() { return {}; }
    // Validates z_eff > 0 and eb > 0, throwing DomainError otherwise.
    static BoundStateModel make(StateKind kind, double z_eff, double eb, bool average_m = true);

    int principal_n() const { return kind == StateKind::hydrogenic_1s ? 1 : 2; }
};

using Vec3 = std::array<double, 3>;

std::complex<double> momentum_wavefunction(const BoundStateModel& state, const Vec3& p);

// |phi(p)|^2 as used in the rates: depends on |p| and on the cosine between p
// and the quantization axis. m-averaged 2p densities ignore the angle.
double momentum_density(const BoundStateModel& state, double p, double cos_to_axis);

// max over directions of momentum_density at fixed |p|.
double max_momentum_density(const BoundStateModel& state, double p);

// Z_eff = n sqrt(2 E_B) for principal quantum number n in {1, 2}.
double effective_charge_for(double eb, int principal_n);

}  // namespace sfi
