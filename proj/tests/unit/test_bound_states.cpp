#include <doctest.h>

#include <cmath>

#include "sfi/bound_states.hpp"
#include "sfi/constants.hpp"
#include "sfi/errors.hpp"
#include "sfi/quadrature.hpp"

using namespace sfi;

namespace {

// Integral of |phi(p)|^2 over momentum space: Gauss-Legendre in p = Z tan(s),
// Gauss-Legendre in cos(theta), trapezoid in phi.
template <class Density>
double integrate(double z, Density density) {
    const GaussLegendre radial(200), polar(24);
    const int n_phi = 16;
    const double half_pi = 0.5 * constants::pi;
    double total = 0.0;
    for (std::size_t i = 0; i < radial.order(); ++i) {
        const double s = half_pi * 0.5 * (radial.nodes[i] + 1.0);
        const double p = z * std::tan(s);
        const double jac = z / (std::cos(s) * std::cos(s)) * half_pi * 0.5 * radial.weights[i];
        double angular = 0.0;
        for (std::size_t j = 0; j < polar.order(); ++j) {
            const double c = polar.nodes[j], st = std::sqrt(1 - c * c);
            for (int k = 0; k < n_phi; ++k) {
                const double ph = constants::two_pi * k / n_phi;
                angular += polar.weights[j] * (constants::two_pi / n_phi) *
                           density(Vec3{p * st * std::cos(ph), p * st * std::sin(ph), p * c}, p, c);
            }
        }
        total += jac * p * p * angular;
    }
    return total;
}

}  // namespace

TEST_CASE("effective charges") {
    CHECK(effective_charge_for(0.5, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(effective_charge_for(0.7925, 2) == doctest::Approx(2.5179).epsilon(1e-4));
    CHECK(effective_charge_for(0.125, 2) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(effective_charge_for(0.5, 3), DomainError);
}

TEST_CASE("1s amplitude at the origin and its p^-8 tail") {
    const auto s = BoundStateModel::hydrogen_1s();
    CHECK(std::abs(momentum_wavefunction(s, {0, 0, 0})) == doctest::Approx(2 * std::sqrt(2.0) / constants::pi).epsilon(1e-14));
    CHECK(std::abs(momentum_wavefunction(s, {0, 0, 0})) == doctest::Approx(0.90032).epsilon(1e-5));
    const double r = momentum_density(s, 3.0, 1.0) / momentum_density(s, 30.0, 1.0);
    CHECK(r == doctest::Approx(std::pow(901.0 / 10.0, 4)).epsilon(1e-13));
}

TEST_CASE("every state is normalized") {
    for (StateKind k : {StateKind::hydrogenic_1s, StateKind::hydrogenic_2p_m0, StateKind::hydrogenic_2p_mplus1,
                        StateKind::hydrogenic_2p_mminus1})
        for (double z : {1.0, 2.5179}) {
            const auto st = BoundStateModel::make(k, z, 0.5 * z * z, false);
            const double norm = integrate(z, [&](const Vec3& p, double, double) { return std::norm(momentum_wavefunction(st, p)); });
            CHECK(norm == doctest::Approx(1.0).epsilon(1e-8));
            const double via_density = integrate(z, [&](const Vec3&, double p, double c) { return momentum_density(st, p, c); });
            CHECK(via_density == doctest::Approx(1.0).epsilon(1e-8));
        }
    const auto avg = BoundStateModel::make(StateKind::hydrogenic_2p_m0, 2.5179, 0.7925, true);
    CHECK(integrate(2.5179, [&](const Vec3&, double p, double c) { return momentum_density(avg, p, c); }) ==
          doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("angular structure of 2p densities") {
    const auto m0 = BoundStateModel::make(StateKind::hydrogenic_2p_m0, 1.0, 0.125, false);
    const auto m1 = BoundStateModel::make(StateKind::hydrogenic_2p_mplus1, 1.0, 0.125, false);
    CHECK(momentum_density(m0, 0.7, 0.0) == 0.0);                  // node in the equatorial plane
    CHECK(momentum_density(m1, 0.7, 1.0) == doctest::Approx(0.0)); // node along the axis
    CHECK(momentum_density(m0, 0.7, 0.3) == doctest::Approx(momentum_density(m0, 0.7, -0.3)).epsilon(1e-15));
    // m-average is isotropic and equals the mean of the three m densities
    const auto avg = BoundStateModel::make(StateKind::hydrogenic_2p_m0, 1.0, 0.125, true);
    const auto mm = BoundStateModel::make(StateKind::hydrogenic_2p_mminus1, 1.0, 0.125, false);
    for (double c : {-0.9, 0.0, 0.4, 1.0}) {
        const double mean = (momentum_density(m0, 0.7, c) + momentum_density(m1, 0.7, c) + momentum_density(mm, 0.7, c)) / 3;
        CHECK(momentum_density(avg, 0.7, c) == doctest::Approx(mean).epsilon(1e-13));
    }
    CHECK(max_momentum_density(m0, 0.7) >= momentum_density(m0, 0.7, 1.0));
}

TEST_CASE("invalid states") {
    CHECK_THROWS_AS(BoundStateModel::make(StateKind::hydrogenic_1s, 0.0, 0.5), DomainError);
    CHECK_THROWS_AS(BoundStateModel::make(StateKind::hydrogenic_1s, 1.0, -0.5), DomainError);
    CHECK(state_kind_from_string("hydrogenic_2p_m+1") == StateKind::hydrogenic_2p_mplus1);
    CHECK(to_string(StateKind::hydrogenic_2p_mminus1) == "hydrogenic_2p_m-1");
}
