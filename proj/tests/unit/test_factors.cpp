#include <doctest.h>

#include <cmath>

#include "sfi/errors.hpp"
#include "sfi/factors.hpp"

using namespace sfi;

TEST_CASE("tunneling factor") {
    const ScaledValue v = tunneling_rate_factor(0.05, 0.5);
    CHECK(v.value == doctest::Approx(std::exp(-40.0 / 3.0)).epsilon(1e-14));
    CHECK(v.value == doctest::Approx(1.6152e-6).epsilon(1e-4));
    CHECK(v.log_magnitude == doctest::Approx(-2.0 / (3.0 * 0.05)).epsilon(1e-15));
    CHECK(tunneling_rate_factor(1e12, 0.5).value == doctest::Approx(1.0).epsilon(1e-9));
    const ScaledValue tiny = tunneling_rate_factor(1e-4, 0.5);
    CHECK(tiny.value == 0.0);
    CHECK(tiny.underflow);
}

TEST_CASE("frequency-scaled factor") {
    CHECK(toll_wheeler_factor(1.0, 4.0 / 3.0).value == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(toll_wheeler_factor(1e6, 1e6).value == doctest::Approx(1.0).epsilon(1e-11));
    const ScaledValue u = toll_wheeler_factor(0.1, 0.01);
    CHECK(u.value == 0.0);
    CHECK(u.underflow);
    const ScaledValue z = toll_wheeler_factor(0.0, 1.0);
    CHECK(z.value == 0.0);
    CHECK(z.underflow);
}

TEST_CASE("exponent fit recovers an exact model") {
    std::vector<RateSample> s;
    for (double e = 0.03; e < 0.12; e += 0.01) s.push_back({e, 7.0 * std::exp(-3.0 / e)});
    const ExponentFit f = tunneling_exponent_fit(s);
    CHECK(std::abs(f.c - 3.0) <= 1e-12);
    CHECK(f.a == doctest::Approx(std::log(7.0)).epsilon(1e-12));
    CHECK(f.residual_norm < 1e-12);
    CHECK(f.samples == s.size());
}

TEST_CASE("power law is flagged by its residual") {
    std::vector<RateSample> s;
    for (double e = 0.01; e < 1.0; e *= 1.5) s.push_back({e, std::pow(e, 4)});
    const ExponentFit f = tunneling_exponent_fit(s);
    CHECK(f.residual_norm > 0.5);
}

TEST_CASE("weights enter the fit") {
    std::vector<RateSample> s = {{0.05, std::exp(-20.0)}, {0.1, std::exp(-10.0)}, {0.2, std::exp(-4.0)}};
    const ExponentFit even = tunneling_exponent_fit(s);
    const ExponentFit skew = tunneling_exponent_fit(s, {1.0, 1.0, 100.0});
    CHECK(even.c != doctest::Approx(skew.c));
}

TEST_CASE("fit input errors") {
    CHECK_THROWS_AS(tunneling_exponent_fit({{0.1, 1.0}, {0.2, 2.0}}), FitError);
    CHECK_THROWS_AS(tunneling_exponent_fit({{0.1, 1.0}, {0.2, 0.0}, {0.3, 1.0}}), FitError);
    CHECK_THROWS_AS(tunneling_exponent_fit({{0.1, 1.0}, {0.1, 2.0}, {0.1, 1.0}}), FitError);
}

TEST_CASE("momentum profile is a tunneling factor at the local field") {
    const auto fp = derive_params(LaserInput::from_peak_field(0.057, 0.1), 0.5);
    CHECK(tunneling_momentum_profile(fp, 0.0).value == doctest::Approx(tunneling_rate_factor(0.1, 0.5).value).epsilon(1e-14));
    CHECK(tunneling_momentum_profile(fp, 0.5).value < tunneling_momentum_profile(fp, 0.0).value);
    CHECK(tunneling_momentum_profile(fp, 0.5).value == doctest::Approx(tunneling_momentum_profile(fp, -0.5).value));
}
