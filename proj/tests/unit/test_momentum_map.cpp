#include <doctest.h>

#include <cmath>

#include "sfi/errors.hpp"
#include "sfi/momentum_map.hpp"

using namespace sfi;

namespace {
FieldParams field(Polarization pol) { return derive_params(LaserInput::from_ponderomotive(0.1, 0.3, pol), 0.5); }
}  // namespace

TEST_CASE("mirror symmetry in p_perp and p_par") {
    for (Polarization pol : {Polarization::linear, Polarization::circular}) {
        MomentumGridSpec g;
        g.p_par_max = 1.2;
        g.p_perp_max = 1.2;
        g.n_par = 25;
        g.n_perp = 25;
        const RateGrid m = momentum_map(field(pol), BoundStateModel::hydrogen_1s(), g);
        CHECK(m.kernel_width == doctest::Approx(0.05));
        for (std::size_t i = 0; i < g.n_perp; ++i)
            for (std::size_t j = 0; j < g.n_par; ++j) {
                const double v = m.at(i, j);
                CHECK(std::abs(m.at(g.n_perp - 1 - i, j) - v) <= 1e-12 * std::abs(v));
                CHECK(std::abs(m.at(i, g.n_par - 1 - j) - v) <= 1e-12 * std::abs(v));
            }
    }
}

TEST_CASE("without smoothing the map sits on the channel rings") {
    const FieldParams fp = field(Polarization::circular);
    MomentumGridSpec g;
    g.p_par_max = 1.5;
    g.p_perp_max = 1.5;
    g.n_par = 61;
    g.n_perp = 61;
    g.kernel_width = 0.0;
    const RateGrid m = momentum_map(fp, BoundStateModel::hydrogen_1s(), g);
    const auto ch = channels(fp, BoundStateModel::hydrogen_1s(), 1e-8);
    const double half = 0.5 * (m.p_par[1] - m.p_par[0]);
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < g.n_perp; ++i)
        for (std::size_t j = 0; j < g.n_par; ++j) {
            if (m.at(i, j) == 0.0) continue;
            ++nonzero;
            const double p = std::hypot(m.p_par[j], m.p_perp[i]);
            bool near = false;
            for (const auto& c : ch) near = near || std::abs(p - c.p) <= half;
            CHECK(near);
        }
    CHECK(nonzero > 0);
}

TEST_CASE("threads do not change the result") {
    MomentumGridSpec g;
    g.n_par = 15;
    g.n_perp = 15;
    const auto a = momentum_map(field(Polarization::linear), BoundStateModel::hydrogen_1s(), g, {}, 1);
    const auto b = momentum_map(field(Polarization::linear), BoundStateModel::hydrogen_1s(), g, {}, 3);
    CHECK(a.values == b.values);
}

TEST_CASE("bad grids") {
    MomentumGridSpec g;
    g.n_par = 1;
    CHECK_THROWS_AS(momentum_map(field(Polarization::linear), BoundStateModel::hydrogen_1s(), g), DomainError);
}
