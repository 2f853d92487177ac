#include "sfi/momentum_map.hpp"

#include <cmath>
#include <memory>

#include "sfi/bessel.hpp"
#include "sfi/constants.hpp"
#include "sfi/errors.hpp"
#include "sfi/parallel.hpp"
#include "sfi/quadrature.hpp"

namespace sfi {
namespace {

std::vector<double> symmetric_axis(double max, std::size_t n) {
    std::vector<double> axis(n);
    for (std::size_t i = 0; i < n; ++i)
        axis[i] = -max + 2.0 * max * static_cast<double>(i) / static_cast<double>(n - 1);
    // Exact mirror pairs.
    for (std::size_t i = 0; i < n / 2; ++i) axis[n - 1 - i] = -axis[i];
    if (n % 2 == 1) axis[n / 2] = 0.0;
    return axis;
}

constexpr double kKernelReach = 12.0;  // Gaussian cut at 12 sigma

}  // namespace

RateGrid momentum_map(const FieldParams& fp, const BoundStateModel& state,
                      const MomentumGridSpec& grid, const RateOptions& opt, unsigned threads) {
    if (!(grid.p_par_max > 0.0) || !(grid.p_perp_max > 0.0))
        throw DomainError("grid", "momentum bounds must be positive");
    if (grid.n_par < 2 || grid.n_perp < 2)
        throw DomainError("grid", "at least two points per axis are required");

    RateGrid out;
    out.field = fp;
    out.state = state;
    out.kernel_width = grid.kernel_width < 0.0 ? 0.5 * fp.omega : grid.kernel_width;
    out.p_par = symmetric_axis(grid.p_par_max, grid.n_par);
    out.p_perp = symmetric_axis(grid.p_perp_max, grid.n_perp);
    out.values.assign(grid.n_par * grid.n_perp, 0.0);

    const auto chans = channels(fp, state, opt.tail_eps);
    const bool circular = fp.polarization == Polarization::circular;
    const double sigma = out.kernel_width;
    const double ring_half_width =
        0.5 * std::max(out.p_par[1] - out.p_par[0], out.p_perp[1] - out.p_perp[0]);
    std::unique_ptr<GeneralizedBessel> gen;
    if (!circular) gen = std::make_unique<GeneralizedBessel>(-0.5 * fp.z);

    parallel_for(out.values.size(), threads, [&](std::size_t idx) {
        const std::size_t i = idx / grid.n_par;
        const std::size_t j = idx % grid.n_par;
        const double ppar = out.p_par[j];
        const double pperp = out.p_perp[i];
        const double p = std::hypot(ppar, pperp);
        const double energy = 0.5 * p * p;

        // Polar angle of the cell in the rate frame, phi = 0 plane.
        double cos_t, sin_t;
        if (p == 0.0) {
            cos_t = 1.0;
            sin_t = 0.0;
        } else if (!circular && opt.linear_axis == LinearAngleAxis::propagation) {
            cos_t = pperp / p;
            sin_t = std::abs(ppar) / p;
        } else {
            cos_t = ppar / p;
            sin_t = std::abs(pperp) / p;
        }
        const double axis_cos =
            (!circular && opt.linear_axis == LinearAngleAxis::propagation) ? ppar / (p > 0 ? p : 1.0)
                                                                           : cos_t;

        CompensatedSum sum;
        for (const Channel& ch : chans) {
            if (ch.p == 0.0) continue;
            double weight;
            if (sigma > 0.0) {
                const double de = energy - 0.5 * ch.p * ch.p;
                if (std::abs(de) > kKernelReach * sigma) continue;
                weight = std::exp(-0.5 * de * de / (sigma * sigma)) /
                         (sigma * std::sqrt(constants::two_pi));
            } else {
                if (std::abs(p - ch.p) > ring_half_width) continue;
                weight = 1.0;
            }
            double bessel_sq;
            if (circular) {
                const double zeta = fp.alpha0_c * ch.p * sin_t;
                const double jv = zeta == 0.0 ? 0.0 : bessel_j(ch.n, zeta);
                bessel_sq = jv * jv;
            } else {
                const double jv = (*gen)(ch.n, fp.alpha0_l * ch.p * cos_t);
                bessel_sq = jv * jv;
            }
            const double e = 0.5 * ch.p * ch.p + fp.eb;
            const double density = constants::two_pi * ch.p * e * e *
                                   momentum_density(state, ch.p, axis_cos) * bessel_sq;
            sum.add(weight * density);
        }
        out.values[idx] = sum.value();
    });
    return out;
}

}  // namespace sfi
