#include <doctest.h>

#include <cmath>
#include <random>

#include "../support/oracles.hpp"
#include "sfi/bessel.hpp"
#include "sfi/errors.hpp"

using namespace sfi;

TEST_CASE("reference values") {
    CHECK(bessel_j(0, 0.0) == 1.0);
    CHECK(bessel_j(3, 0.0) == 0.0);
    CHECK(bessel_j(1, 1.0) == doctest::Approx(0.4400505857).epsilon(1e-10));
    CHECK(bessel_j(5, 2.0) == doctest::Approx(7.0396e-3).epsilon(1e-4));
    CHECK(gen_bessel_j(0, 0.0, 0.0) == 1.0);
    CHECK(gen_bessel_j(2, 1.0, 0.0) == doctest::Approx(0.1149034849).epsilon(1e-10));
}

TEST_CASE("agrees with the quadrature oracle") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> nd(0, 500);
    std::uniform_real_distribution<double> xd(0.0, 500.0);
    for (int i = 0; i < 200; ++i) {
        const int n = nd(rng);
        const double x = xd(rng);
        const double ref = oracle::bessel_j(n, x).linear();
        const double got = bessel_j(n, x);
        REQUIRE(std::abs(got - ref) <= 1e-12 * std::abs(ref) + 1e-300);
    }
}

TEST_CASE("two-argument decomposition against its integral") {
    const double v = gen_bessel_j(3, 2.0, -1.5);
    const auto ref = oracle::gen_bessel_j(3, 2.0L, -1.5L);
    CHECK(std::abs(v - static_cast<double>(ref.value)) <= 1e-10);
    CHECK(v == doctest::Approx(-0.377883038284).epsilon(1e-10));

    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> nd(-300, 300);
    std::uniform_real_distribution<double> ud(-100.0, 100.0);
    for (int i = 0; i < 100; ++i) {
        const int n = nd(rng);
        const double u = ud(rng), w = ud(rng);
        REQUIRE(std::abs(gen_bessel_j(n, u, w) - static_cast<double>(oracle::gen_bessel_j(n, u, w).value)) <= 1e-10);
    }
}

TEST_CASE("negative orders and arguments") {
    for (int n : {1, 2, 7, 30})
        for (double x : {0.3, 4.0, 45.0}) {
            const double s = (n % 2) ? -1.0 : 1.0;
            CHECK(bessel_j(-n, x) == doctest::Approx(s * bessel_j(n, x)).epsilon(1e-15));
            CHECK(bessel_j(n, -x) == doctest::Approx(s * bessel_j(n, x)).epsilon(1e-15));
            CHECK(gen_bessel_j(n, -x, 0.7) == doctest::Approx(s * gen_bessel_j(n, x, 0.7)).epsilon(1e-12));
        }
}

TEST_CASE("sum rules") {
    for (double x : {0.5, 10.0, 123.4}) {
        const auto seq = bessel_j_sequence(static_cast<int>(x) + 80, x);
        double s = seq[0] * seq[0];
        for (std::size_t k = 1; k < seq.size(); ++k) s += 2.0 * seq[k] * seq[k];
        CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    }
    for (auto [u, v] : {std::pair{3.0, -1.0}, {40.0, 12.5}, {-7.0, 30.0}}) {
        const GeneralizedBessel g(v);
        const int reach = static_cast<int>(std::abs(u) + 2 * std::abs(v)) + 60;
        double s1 = 0, s2 = 0;
        for (int n = -reach; n <= reach; ++n) {
            const double j = g(n, u);
            s1 += j;
            s2 += j * j;
        }
        CHECK(s1 == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(s2 == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("two-argument function reduces to J_n when v = 0") {
    for (int n : {-5, 0, 2, 17})
        for (double u : {0.0, 1.0, 9.5}) CHECK(gen_bessel_j(n, u, 0.0) == doctest::Approx(bessel_j(n, u)).epsilon(1e-14));
}

TEST_CASE("log bound dominates the value") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> nd(-200, 200);
    std::uniform_real_distribution<double> ud(-80.0, 80.0);
    for (int i = 0; i < 200; ++i) {
        const int n = nd(rng);
        const double u = ud(rng), v = ud(rng) / 2;
        const double j = gen_bessel_j(n, u, v);
        if (j != 0.0) REQUIRE(std::log(std::abs(j)) <= log_bessel_bound(n, u, v) + 1e-12);
    }
}

TEST_CASE("large-order form") {
    const double direct = bessel_j(100, 50.0);
    const ScaledValue a = bessel_asymptotic(100, 50.0);
    CHECK(std::abs(a.value / direct - 1.0) <= 1e-2);
    CHECK(std::abs(bessel_asymptotic(20, 10.0).value / bessel_j(20, 10.0) - 1.0) <= 5e-2);

    const ScaledValue sq = bessel_sq_asymptotic(100, 50.0);
    CHECK(sq.value == doctest::Approx(a.value * a.value).epsilon(1e-12));
    CHECK(std::abs(sq.value / (direct * direct) - 1.0) <= 2e-2);

    double prev = INFINITY;
    for (int n : {20, 40, 80, 160}) {
        const double err = std::abs(bessel_asymptotic(n, 0.5 * n).value / bessel_j(n, 0.5 * n) - 1.0);
        CHECK(err < prev);
        prev = err;
    }

    CHECK_THROWS_AS(bessel_asymptotic(10, 10.0), DomainError);
    CHECK_THROWS_AS(bessel_asymptotic(10, 11.0), DomainError);
    CHECK_THROWS_AS(bessel_asymptotic(10, 0.0), DomainError);
}

TEST_CASE("large-order form underflows to zero with a flag") {
    const ScaledValue a = bessel_asymptotic(5000, 1.0);
    CHECK(a.value == 0.0);
    CHECK(a.underflow);
    CHECK(a.log_magnitude < -700.0);
}

TEST_CASE("exponent n^2 - x^2 overshoots by more than 1e3 decades") {
    const double correct = 2.0 * std::log(bessel_j(100, 50.0));
    const double variant = log_bessel_sq_exp_n2_variant(100, 50.0);
    CHECK((variant - correct) / std::log(10.0) > 1e3);
}

TEST_CASE("out-of-range arguments") {
    CHECK_THROWS_AS(bessel_j(0, 2e6), RangeError);
    CHECK_THROWS_AS(bessel_j(2000000, 1.0), RangeError);
    CHECK_THROWS_AS(bessel_j(1, NAN), RangeError);
}
