#include "sfi/sweep.hpp"

#include <cmath>

#include "sfi/errors.hpp"
#include "sfi/parallel.hpp"

namespace sfi {

std::vector<SweepPoint> channel_averaged_sweep(const SweepSpec& spec, Polarization pol,
                                               SweepObservable observable, unsigned threads) {
    if (!(spec.omega > 0.0)) throw DomainError("omega", "photon energy must be positive");
    if (!(spec.gamma_k.lo > 0.0) || !(spec.gamma_k.hi >= spec.gamma_k.lo))
        throw DomainError("gamma_k", "range must satisfy 0 < lo <= hi");
    if (spec.delta_points < 1) throw DomainError("delta_points", "must be positive");
    const double eb = spec.state.eb;
    const double w = spec.omega;

    // gamma_K decreases with U_p, so the window maps to U_p in
    // [E_B / (2 hi^2), E_B / (2 lo^2)]; beta0 < max caps U_p below 2 c omega max.
    const double up_lo = eb / (2.0 * spec.gamma_k.hi * spec.gamma_k.hi);
    const double n_lo = std::floor((up_lo + eb) / w);
    const double up_hi = eb / (2.0 * spec.gamma_k.lo * spec.gamma_k.lo);
    const double n_hi = std::ceil((up_hi + eb) / w) + 1.0;

    std::vector<SweepPoint> points;
    for (double nd = std::max(1.0, n_lo); nd <= n_hi; nd += 1.0) {
        const int n = static_cast<int>(nd);
        const double up_mid = n * w - eb - 0.5 * w;
        if (!(up_mid > 0.0)) continue;
        const FieldParams mid = derive_params(LaserInput::from_ponderomotive(w, up_mid, pol), eb);
        if (mid.gamma_k < spec.gamma_k.lo || mid.gamma_k > spec.gamma_k.hi) continue;
        if (!(mid.beta0 < spec.beta0_max)) continue;
        points.push_back({n, mid, 0.0});
    }

    parallel_for(points.size(), threads, [&](std::size_t i) {
        SweepPoint& pt = points[i];
        double acc = 0.0;
        for (int k = 0; k < spec.delta_points; ++k) {
            const double delta = (k + 0.5) / spec.delta_points;
            const double up = pt.n * w - eb - delta * w;
            const FieldParams fp = derive_params(LaserInput::from_ponderomotive(w, up, pol), eb);
            if (threshold_order(fp) != pt.n)
                throw InvariantViolation("sweep: lowest channel moved inside its own interval");
            if (observable == SweepObservable::lowest_channel) {
                const auto chans = channels(fp, spec.state, spec.rate.tail_eps);
                const int order = spec.quad.order > 0 ? spec.quad.order : 2 * auto_quadrature_order(fp, chans);
                const auto s = spectrum(fp, spec.state, order, spec.rate, spec.quad.azimuth_points);
                acc += s.front().w;
            } else {
                acc += total_rate(fp, spec.state, spec.quad, spec.rate).w;
            }
        }
        pt.value = acc / spec.delta_points;
    });
    return points;
}

std::vector<RateSample> to_samples(const std::vector<SweepPoint>& points) {
    std::vector<RateSample> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back({p.mid.e0, p.value});
    return out;
}

}  // namespace sfi
