#include <doctest.h>

#include <cmath>
#include <random>

#include "sfi/constants.hpp"
#include "sfi/errors.hpp"
#include "sfi/params.hpp"

using namespace sfi;

namespace {
FieldParams ref(Polarization pol = Polarization::linear) {
    return derive_params(LaserInput::from_ponderomotive(0.1, 0.3, pol), 0.5);
}
}  // namespace

TEST_CASE("derived quantities at omega=0.1, U_p=0.3, E_B=0.5") {
    const FieldParams fp = ref();
    CHECK(fp.z == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(fp.z1 == doctest::Approx(1.2).epsilon(1e-15));
    CHECK(fp.gamma_k == doctest::Approx(1.0 / std::sqrt(1.2)).epsilon(1e-15));
    CHECK(fp.alpha0_c == doctest::Approx(std::sqrt(60.0)).epsilon(1e-15));
    CHECK(fp.alpha0_l == doctest::Approx(2.0 * std::sqrt(30.0)).epsilon(1e-15));
    CHECK(fp.beta0 * constants::speed_of_light == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(fp.z_f == doctest::Approx(0.6 / (constants::speed_of_light * constants::speed_of_light)).epsilon(1e-15));
    CHECK(fp.intensity == doctest::Approx(4.0 * 0.01 * 0.3).epsilon(1e-15));
}

TEST_CASE("peak field and ponderomotive energy convert both ways") {
    const double w = 0.057, e0 = 0.0534;
    const FieldParams lin = derive_params(LaserInput::from_peak_field(w, e0, Polarization::linear), 0.5);
    CHECK(lin.up == doctest::Approx(e0 * e0 / (4 * w * w)).epsilon(1e-15));
    CHECK(lin.e0 == e0);
    CHECK(field_from_ponderomotive(w, lin.up, Polarization::linear) == doctest::Approx(e0).epsilon(1e-15));

    const FieldParams circ = derive_params(LaserInput::from_peak_field(w, e0, Polarization::circular), 0.5);
    CHECK(circ.up == doctest::Approx(e0 * e0 / (2 * w * w)).epsilon(1e-15));
    // same cycle-averaged intensity gives the same U_p
    CHECK(ponderomotive_from_field(w, field_from_ponderomotive(w, 0.3, Polarization::circular),
                                   Polarization::circular) == doctest::Approx(0.3).epsilon(1e-15));
}

TEST_CASE("invalid inputs name the offending field") {
    auto field_of = [](auto fn) {
        try {
            fn();
        } catch (const DomainError& e) {
            return e.field();
        }
        return std::string("none");
    };
    CHECK(field_of([] { derive_params(LaserInput::from_ponderomotive(-0.1, 0.3), 0.5); }) == "omega");
    CHECK(field_of([] { derive_params(LaserInput::from_ponderomotive(0.1, -0.3), 0.5); }) == "up");
    CHECK(field_of([] { derive_params(LaserInput::from_peak_field(0.1, -1.0), 0.5); }) == "e0");
    CHECK(field_of([] { derive_params(LaserInput::from_ponderomotive(0.1, 0.3), 0.0); }) == "eb");
    CHECK(field_of([] { derive_params(LaserInput::from_ponderomotive(NAN, 0.3), 0.5); }) == "omega");
}

TEST_CASE("tunneling conditions") {
    const ConditionReport weak = tunneling_conditions(ref());
    CHECK_FALSE(weak.strong_field);
    CHECK_FALSE(weak.many_photon);
    CHECK(weak.eb_over_omega == doctest::Approx(5.0));
    CHECK(weak.identity_residual < 1e-14);

    const FieldParams strong = derive_params(LaserInput::from_ponderomotive(0.01, 50.0), 0.5);
    const ConditionReport r = tunneling_conditions(strong);
    CHECK(r.z1 == doctest::Approx(200.0));
    CHECK(r.eb_over_omega == doctest::Approx(50.0));
    CHECK(r.strong_field);
    CHECK(r.many_photon);

    const ConditionReport strict = tunneling_conditions(strong, 1000.0);
    CHECK_FALSE(strict.strong_field);
    CHECK_FALSE(strict.many_photon);
}

TEST_CASE("2z/z1 equals E_B/omega and gamma_K = 1/sqrt(z1) over random parameters") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> lw(-4, 1), lu(-4, 3), le(-2, 0.5);
    for (int i = 0; i < 1000; ++i) {
        const double w = std::pow(10.0, lw(rng)), up = std::pow(10.0, lu(rng)), eb = std::pow(10.0, le(rng));
        const FieldParams fp = derive_params(LaserInput::from_ponderomotive(w, up), eb);
        const ConditionReport r = tunneling_conditions(fp);
        REQUIRE(std::abs(r.two_z_over_z1 / fp.eb_over_omega() - 1.0) <= 1e-14);
        REQUIRE(std::abs(fp.gamma_k * std::sqrt(fp.z1) - 1.0) <= 1e-14);
    }
}

TEST_CASE("parameters grow monotonically with U_p") {
    double prev_z = 0, prev_gamma = INFINITY, prev_beta = 0;
    for (double up = 0.01; up < 100; up *= 1.7) {
        const FieldParams fp = derive_params(LaserInput::from_ponderomotive(0.05, up), 0.5);
        CHECK(fp.z > prev_z);
        CHECK(fp.gamma_k < prev_gamma);
        CHECK(fp.beta0 > prev_beta);
        prev_z = fp.z;
        prev_gamma = fp.gamma_k;
        prev_beta = fp.beta0;
    }
}

TEST_CASE("regime labels") {
    const RegimeCell hf = classify_regime(1.0, 4.0 * 0.01, 0.5);
    CHECK(hf.beta0 == doctest::Approx(0.01 / (2 * constants::speed_of_light)));
    CHECK(hf.beta0 == doctest::Approx(3.65e-5).epsilon(1e-2));
    CHECK(hf.z_f == doctest::Approx(1.07e-6).epsilon(1e-2));
    CHECK(hf.label == Regime::high_frequency);

    // boundary at omega = E_B
    CHECK(classify_regime(0.5, 1e-4, 0.5).label == Regime::high_frequency);
    CHECK(classify_regime(std::nextafter(0.5, 0.0), 1e-4, 0.5).label == Regime::oasis);

    // beta0 = 1 at fixed omega: z = 2c
    const double w = 0.05, c = constants::speed_of_light;
    const double up_star = 2.0 * c * w;
    CHECK(classify_regime(w, 4 * w * w * up_star * 0.99, 0.5).label == Regime::oasis);
    CHECK(classify_regime(w, 4 * w * w * up_star * 1.01, 0.5).label == Regime::magnetic);

    // z_f >= 1 wins over the magnetic label
    const double up_rel = 0.5 * c * c;
    CHECK(classify_regime(w, 4 * w * w * up_rel * 1.01, 0.5).label == Regime::relativistic);
}

TEST_CASE("regime map cells match classify_regime and partition the plane") {
    const RegimeMap map = regime_map({1e-3, 2.0}, {1e10, 1e22}, {24, 30, true}, 0.5);
    REQUIRE(map.omega_axis.size() == 24);
    REQUIRE(map.intensity_axis.size() == 30);
    CHECK(map.omega_axis.front() == 1e-3);
    CHECK(map.omega_axis.back() == 2.0);
    int counts[4] = {0, 0, 0, 0};
    for (std::size_t i = 0; i < 30; ++i)
        for (std::size_t j = 0; j < 24; ++j) {
            const RegimeCell& c = map.at(i, j);
            const RegimeCell ref = classify_regime(map.omega_axis[j], constants::wcm2_to_au(map.intensity_axis[i]), 0.5);
            REQUIRE(c.label == ref.label);
            ++counts[static_cast<int>(c.label)];
        }
    for (int k = 0; k < 4; ++k) CHECK(counts[k] > 0);
}

TEST_CASE("regime map polylines") {
    const RegimeMap map = regime_map({1e-3, 2.0}, {1e10, 1e20}, {16, 16, true}, 0.5, {0.1, 0.3, 1.0});
    const double c = constants::speed_of_light;
    bool vertical = false;
    for (const Polyline& l : map.polylines) {
        if (l.name == "beta0=1")
            for (const Vertex& v : l.vertices)
                CHECK(std::abs(v.up / (2.0 * c * v.omega) - 1.0) <= 1e-12);
        if (l.name == "z_f=1")
            for (const Vertex& v : l.vertices) CHECK(std::abs(2.0 * v.up / (c * c) - 1.0) <= 1e-12);
        if (l.name == "gamma_K=0.1")
            for (const Vertex& v : l.vertices) CHECK(std::abs(v.up / (0.5 / (2 * 0.01)) - 1.0) <= 1e-12);
        if (l.name == "omega=E_B") {
            vertical = true;
            for (const Vertex& v : l.vertices) CHECK(v.omega == 0.5);
        }
    }
    CHECK(vertical);
}

TEST_CASE("multithreaded map equals the serial one") {
    const RegimeMap a = regime_map({1e-3, 2.0}, {1e10, 1e20}, {20, 20, true}, 0.5, {0.1}, 1);
    const RegimeMap b = regime_map({1e-3, 2.0}, {1e10, 1e20}, {20, 20, true}, 0.5, {0.1}, 4);
    REQUIRE(a.cells.size() == b.cells.size());
    for (std::size_t k = 0; k < a.cells.size(); ++k) {
        CHECK(a.cells[k].beta0 == b.cells[k].beta0);
        CHECK(a.cells[k].label == b.cells[k].label);
    }
}
