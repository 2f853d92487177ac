#pragma once

#include <cstddef>
#include <vector>

#include "sfi/bound_states.hpp"
#include "sfi/params.hpp"

namespace sfi {

// Which axis the linear-polarization angle theta_p is measured from. The
// first generalized-Bessel argument is alpha0_l * p * cos(theta_p) in both
// cases; only the frame changes.
enum class LinearAngleAxis { polarization, propagation };

struct RateOptions {
    double tail_eps = 1e-8;
    LinearAngleAxis linear_axis = LinearAngleAxis::polarization;
    // Circular only: channels with n >= this use the large-order Bessel form.
    // 0 disables the substitution.
    int asymptotic_from_order = 0;
};

// One photon-order term of the channel sum.
struct Channel {
    int n = 0;
    double p = 0.0;          // outgoing momentum, p^2/2 = n omega - U_p - E_B
    bool open = true;
    double log_bound = 0.0;  // log of an upper bound on the angle-integrated W_n
};

// Term-by-term record of the circular channel inequality chain
//   zeta_c <= alpha0_c p < 2 sqrt(z) sqrt(n - z) <= n.
struct ChannelDiagnostics {
    std::size_t terms_checked = 0;
    std::size_t violations = 0;
    double max_zeta_over_n = 0.0;
};

// Lowest open channel ceil((E_B + U_p) / omega). A quotient within a few ulp
// of an integer is treated as that integer.
int threshold_order(const FieldParams& fp);

// p_n from exact energy bookkeeping; 0 at an exactly-open threshold.
double channel_momentum(const FieldParams& fp, int n);

// Channels from n0 until the per-channel bound (and a geometric estimate of
// everything beyond it) falls below tail_eps relative to the accumulated sum
// of bounds. Throws AccuracyError if that does not happen within 10^5 orders.
std::vector<Channel> channels(const FieldParams& fp, const BoundStateModel& state, double tail_eps);

// Differential rate dW/dOmega_p for circular polarization; theta measured from
// the propagation axis. When `diag` is null a broken inequality chain throws
// InvariantViolation; otherwise violations are counted.
double dw_domega_circular(const FieldParams& fp, const BoundStateModel& state, double theta,
                          double phi = 0.0, const RateOptions& opt = {},
                          ChannelDiagnostics* diag = nullptr);

// Differential rate for linear polarization with J_n(zeta_c)^2 replaced by
// J_n(alpha0_l p cos(theta), -z/2)^2.
double dw_domega_linear(const FieldParams& fp, const BoundStateModel& state, double theta,
                        double phi = 0.0, const RateOptions& opt = {});

// Dispatches on fp.polarization.
double dw_domega(const FieldParams& fp, const BoundStateModel& state, double theta,
                 double phi = 0.0, const RateOptions& opt = {},
                 ChannelDiagnostics* diag = nullptr);

struct QuadSpec {
    int order = 0;             // Gauss-Legendre points in cos(theta); 0 picks from the field
    int azimuth_points = 16;   // trapezoid points in phi (linear polarization)
    double rel_tol = 1e-6;     // order-doubling convergence target for total_rate
    int max_order = 4096;
};

struct SpectrumEntry {
    int n = 0;
    double p = 0.0;
    double w = 0.0;  // angle-integrated partial rate
};

// Default Gauss-Legendre order for the field: resolves the angular
// oscillations of the Bessel factor at the highest channel momentum.
int auto_quadrature_order(const FieldParams& fp, const std::vector<Channel>& chans);

// Angle-integrated per-channel rates at a fixed quadrature order.
std::vector<SpectrumEntry> spectrum(const FieldParams& fp, const BoundStateModel& state,
                                    int quad_order, const RateOptions& opt = {},
                                    int azimuth_points = 16, ChannelDiagnostics* diag = nullptr);

// Same, with quad_order chosen by auto_quadrature_order.
std::vector<SpectrumEntry> spectrum(const FieldParams& fp, const BoundStateModel& state,
                                    const RateOptions& opt = {});

struct TotalRate {
    double w = 0.0;
    double previous = 0.0;  // estimate at half the final quadrature order
    int order = 0;
    std::vector<SpectrumEntry> spectrum;  // partial rates at the final order
};

// W = sum_n W_n, doubling the quadrature order until two successive totals
// agree to quad.rel_tol. A fixed quad.order is checked once against 2x order;
// failure throws AccuracyError carrying both estimates.
TotalRate total_rate(const FieldParams& fp, const BoundStateModel& state,
                     const QuadSpec& quad = {}, const RateOptions& opt = {},
                     ChannelDiagnostics* diag = nullptr);

}  // namespace sfi
