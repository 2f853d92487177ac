#include "sfi/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string>

#include "sfi/bessel.hpp"
#include "sfi/constants.hpp"
#include "sfi/errors.hpp"
#include "sfi/quadrature.hpp"

namespace sfi {
namespace {

using constants::pi;
using constants::two_pi;

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr int kMaxChannels = 100000;

double log_add(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double hi = std::max(a, b);
    return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

// 2 pi p (p^2/2 + E_B)^2, the kinematic prefactor shared by both polarizations.
double kinematic_factor(double p, double eb) {
    const double e = 0.5 * p * p + eb;
    return two_pi * p * e * e;
}

// sin(theta) on [0, pi] with exact zeros at both poles.
double polar_sin(double theta) { return std::sin(std::min(theta, pi - theta)); }

void check_angle(double theta) {
    if (!(theta >= 0.0 && theta <= pi)) throw DomainError("theta", "polar angle must lie in [0, pi]");
}

void check_tail_eps(double tail_eps) {
    if (!(tail_eps > 0.0 && tail_eps < 1.0)) throw DomainError("tail_eps", "must lie in (0, 1)");
}

// Cosine between the momentum direction and the 2p quantization axis.
double axis_cosine(const FieldParams& fp, const RateOptions& opt, double cos_t, double sin_t,
                   double phi) {
    if (fp.polarization == Polarization::linear && opt.linear_axis == LinearAngleAxis::propagation)
        return sin_t * std::cos(phi);
    return cos_t;
}

bool density_depends_on_azimuth(const FieldParams& fp, const BoundStateModel& state,
                                const RateOptions& opt) {
    return fp.polarization == Polarization::linear &&
           opt.linear_axis == LinearAngleAxis::propagation &&
           state.kind != StateKind::hydrogenic_1s && !state.average_m;
}

class ChainChecker {
public:
    ChainChecker(const FieldParams& fp, ChannelDiagnostics* diag) : fp_(fp), diag_(diag) {}

    void check(int n, double p, double zeta) {
        if (fp_.z <= 0.0) return;
        const double nd = n;
        const double radius_bound = fp_.alpha0_c * p;
        const double chain = 2.0 * std::sqrt(fp_.z) * std::sqrt(nd - fp_.z);
        const double slack = 1e-13;
        const bool ok = zeta <= radius_bound * (1.0 + slack) && radius_bound < chain &&
                        chain <= nd * (1.0 + slack) && zeta < nd;
        if (diag_) {
            ++diag_->terms_checked;
            diag_->max_zeta_over_n = std::max(diag_->max_zeta_over_n, zeta / nd);
            if (!ok) ++diag_->violations;
        } else if (!ok) {
            throw InvariantViolation("circular channel chain broken at n = " + std::to_string(n) +
                                     ", zeta = " + std::to_string(zeta));
        }
    }

private:
    const FieldParams& fp_;
    ChannelDiagnostics* diag_;
};

double circular_bessel_sq(int n, double zeta, const RateOptions& opt) {
    if (zeta == 0.0) return n == 0 ? 1.0 : 0.0;
    if (opt.asymptotic_from_order > 0 && n >= opt.asymptotic_from_order)
        return bessel_sq_asymptotic(n, zeta).value;
    const double j = bessel_j(n, zeta);
    return j * j;
}

}  // namespace

int threshold_order(const FieldParams& fp) {
    const double q = (fp.eb + fp.up) / fp.omega;
    const double r = std::round(q);
    if (std::abs(q - r) <= 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, q))
        return static_cast<int>(r);
    return static_cast<int>(std::ceil(q));
}

double channel_momentum(const FieldParams& fp, int n) {
    const double photon = n * fp.omega;
    const double excess = photon - fp.up - fp.eb;
    if (excess <= 16.0 * std::numeric_limits<double>::epsilon() * std::max(photon, fp.up + fp.eb))
        return 0.0;
    return std::sqrt(2.0 * excess);
}

std::vector<Channel> channels(const FieldParams& fp, const BoundStateModel& state, double tail_eps) {
    check_tail_eps(tail_eps);
    const int n0 = threshold_order(fp);
    const double log_eps = std::log(tail_eps);
    const double log_prefactor = std::log(two_pi * 4.0 * pi);  // 2 pi from the rate, 4 pi solid angle

    std::vector<Channel> out;
    double log_sum = kNegInf;
    double prev = kNegInf;
    for (int n = n0; n < n0 + kMaxChannels; ++n) {
        Channel ch;
        ch.n = n;
        ch.p = channel_momentum(fp, n);
        ch.open = true;
        double log_bessel;
        if (fp.polarization == Polarization::circular)
            log_bessel = log_bessel_bound(n, fp.alpha0_c * ch.p);
        else
            log_bessel = log_bessel_bound(n, fp.alpha0_l * ch.p, 0.5 * fp.z);
        if (ch.p > 0.0) {
            const double e = 0.5 * ch.p * ch.p + fp.eb;
            ch.log_bound = log_prefactor + std::log(ch.p) + 2.0 * std::log(e) +
                           std::log(max_momentum_density(state, ch.p)) + 2.0 * log_bessel;
        } else {
            ch.log_bound = kNegInf;
        }
        out.push_back(ch);
        log_sum = log_add(log_sum, ch.log_bound);

        if (n > n0 && ch.log_bound <= prev && ch.log_bound < log_eps + log_sum) {
            const double log_ratio = ch.log_bound - prev;
            if (log_ratio < 0.0) {
                // geometric continuation: B_n r / (1 - r)
                const double log_tail = ch.log_bound + log_ratio - std::log1p(-std::exp(log_ratio));
                if (log_tail < log_eps + log_sum) return out;
            } else if (ch.log_bound == kNegInf) {
                return out;
            }
        }
        prev = ch.log_bound;
    }
    throw AccuracyError("channel sum did not reach tail_eps within 1e5 orders",
                        {static_cast<double>(out.size()), std::exp(log_sum)});
}

double dw_domega_circular(const FieldParams& fp, const BoundStateModel& state, double theta,
                          double phi, const RateOptions& opt, ChannelDiagnostics* diag) {
    check_angle(theta);
    const double sin_t = polar_sin(theta);
    const double cos_t = std::cos(theta);
    const double axis_cos = axis_cosine(fp, opt, cos_t, sin_t, phi);
    ChainChecker chain(fp, diag);
    CompensatedSum sum;
    for (const Channel& ch : channels(fp, state, opt.tail_eps)) {
        if (ch.p == 0.0) continue;
        const double zeta = fp.alpha0_c * ch.p * sin_t;
        chain.check(ch.n, ch.p, zeta);
        sum.add(kinematic_factor(ch.p, fp.eb) * momentum_density(state, ch.p, axis_cos) *
                circular_bessel_sq(ch.n, zeta, opt));
    }
    return sum.value();
}

double dw_domega_linear(const FieldParams& fp, const BoundStateModel& state, double theta,
                        double phi, const RateOptions& opt) {
    check_angle(theta);
    const double sin_t = polar_sin(theta);
    const double cos_t = std::cos(theta);
    const double axis_cos = axis_cosine(fp, opt, cos_t, sin_t, phi);
    const GeneralizedBessel gen(-0.5 * fp.z);
    CompensatedSum sum;
    for (const Channel& ch : channels(fp, state, opt.tail_eps)) {
        if (ch.p == 0.0) continue;
        const double j = gen(ch.n, fp.alpha0_l * ch.p * cos_t);
        sum.add(kinematic_factor(ch.p, fp.eb) * momentum_density(state, ch.p, axis_cos) * j * j);
    }
    return sum.value();
}

double dw_domega(const FieldParams& fp, const BoundStateModel& state, double theta, double phi,
                 const RateOptions& opt, ChannelDiagnostics* diag) {
    return fp.polarization == Polarization::circular
               ? dw_domega_circular(fp, state, theta, phi, opt, diag)
               : dw_domega_linear(fp, state, theta, phi, opt);
}

int auto_quadrature_order(const FieldParams& fp, const std::vector<Channel>& chans) {
    if (chans.empty()) return 32;
    const Channel& last = chans.back();
    const double alpha = fp.polarization == Polarization::circular ? fp.alpha0_c : fp.alpha0_l;
    const double x_max = alpha * last.p;
    int order = 32 + static_cast<int>(std::ceil(x_max + 2.0 * std::sqrt(static_cast<double>(last.n))));
    return (order + 7) / 8 * 8;
}

std::vector<SpectrumEntry> spectrum(const FieldParams& fp, const BoundStateModel& state,
                                    int quad_order, const RateOptions& opt, int azimuth_points,
                                    ChannelDiagnostics* diag) {
    if (quad_order < 1) throw DomainError("quad_order", "must be positive");
    if (azimuth_points < 1) throw DomainError("azimuth_points", "must be positive");
    const auto chans = channels(fp, state, opt.tail_eps);
    const GaussLegendre gl(static_cast<std::size_t>(quad_order));
    const bool circular = fp.polarization == Polarization::circular;
    const bool azimuthal = density_depends_on_azimuth(fp, state, opt);

    // Angular weight of |phi|^2 at each node, integrated over azimuth.
    std::vector<double> sin_nodes(gl.order());
    for (std::size_t i = 0; i < gl.order(); ++i)
        sin_nodes[i] = std::sqrt(std::max(0.0, (1.0 - gl.nodes[i]) * (1.0 + gl.nodes[i])));

    std::unique_ptr<GeneralizedBessel> gen;
    if (!circular) gen = std::make_unique<GeneralizedBessel>(-0.5 * fp.z);
    ChainChecker chain(fp, diag);

    std::vector<SpectrumEntry> out;
    out.reserve(chans.size());
    for (const Channel& ch : chans) {
        SpectrumEntry entry{ch.n, ch.p, 0.0};
        if (ch.p > 0.0) {
            CompensatedSum angular;
            for (std::size_t i = 0; i < gl.order(); ++i) {
                const double c = gl.nodes[i];
                const double s = sin_nodes[i];
                double bessel_sq;
                if (circular) {
                    const double zeta = fp.alpha0_c * ch.p * s;
                    chain.check(ch.n, ch.p, zeta);
                    bessel_sq = circular_bessel_sq(ch.n, zeta, opt);
                } else {
                    const double j = (*gen)(ch.n, fp.alpha0_l * ch.p * c);
                    bessel_sq = j * j;
                }
                double density;
                if (azimuthal) {
                    CompensatedSum az;
                    for (int k = 0; k < azimuth_points; ++k) {
                        const double phi = two_pi * k / azimuth_points;
                        az.add(momentum_density(state, ch.p, axis_cosine(fp, opt, c, s, phi)));
                    }
                    density = az.value() * two_pi / azimuth_points;
                } else {
                    density = two_pi * momentum_density(state, ch.p, axis_cosine(fp, opt, c, s, 0.0));
                }
                angular.add(gl.weights[i] * density * bessel_sq);
            }
            entry.w = kinematic_factor(ch.p, fp.eb) * angular.value();
        }
        out.push_back(entry);
    }
    return out;
}

std::vector<SpectrumEntry> spectrum(const FieldParams& fp, const BoundStateModel& state,
                                    const RateOptions& opt) {
    return spectrum(fp, state, auto_quadrature_order(fp, channels(fp, state, opt.tail_eps)), opt);
}

namespace {

double sum_spectrum(const std::vector<SpectrumEntry>& s) {
    CompensatedSum total;
    for (const auto& e : s) total.add(e.w);
    return total.value();
}

}  // namespace

TotalRate total_rate(const FieldParams& fp, const BoundStateModel& state, const QuadSpec& quad,
                     const RateOptions& opt, ChannelDiagnostics* diag) {
    const bool fixed = quad.order > 0;
    int order = fixed ? quad.order : auto_quadrature_order(fp, channels(fp, state, opt.tail_eps));
    auto coarse = spectrum(fp, state, order, opt, quad.azimuth_points, diag);
    double w_coarse = sum_spectrum(coarse);
    while (true) {
        const int fine_order = 2 * order;
        auto fine = spectrum(fp, state, fine_order, opt, quad.azimuth_points, diag);
        const double w_fine = sum_spectrum(fine);
        if (std::abs(w_fine - w_coarse) <= quad.rel_tol * std::abs(w_fine))
            return {w_fine, w_coarse, fine_order, std::move(fine)};
        if (fixed || 2 * fine_order > quad.max_order)
            throw AccuracyError("total rate: quadrature did not converge (order " +
                                    std::to_string(order) + " vs " + std::to_string(fine_order) + ")",
                                {w_coarse, w_fine});
        order = fine_order;
        w_coarse = w_fine;
    }
}

}  // namespace sfi
