#include "sfi/bessel.hpp"

#include <cfloat>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "sfi/constants.hpp"
#include "sfi/errors.hpp"

namespace sfi {
namespace {

using ld = long double;

constexpr double kMaxArgument = 1.0e6;
constexpr int kMaxOrder = 1'000'000;

// log_tail for truncating generalized-Bessel sums: terms below e^-60 are dropped.
constexpr double kLogDropped = -60.0;

constexpr ld kRescaleAbove = 1.0e2400L;
constexpr ld kRescaleBy = 1.0e-2400L;

void check_inputs(int n, double x) {
    if (!std::isfinite(x) || std::abs(x) > kMaxArgument)
        throw RangeError("bessel: argument outside supported range |x| <= 1e6");
    if (n > kMaxOrder || n < -kMaxOrder)
        throw RangeError("bessel: order outside supported range |n| <= 1e6");
}

int odd_sign(int n) { return (n & 1) ? -1 : 1; }

// Number of orders past max(n, x) at which the backward recurrence starts.
int miller_start(int max_order, ld x) {
    const int m = std::max(max_order, static_cast<int>(std::ceil(static_cast<double>(x))));
    int start = m + 50 + static_cast<int>(std::ceil(std::sqrt(80.0 * m)));
    if (start & 1) ++start;
    return start;
}

// J_0(x) .. J_max_order(x) for x > 0 by Miller's algorithm, normalised with
// J_0 + 2 sum J_2k = 1.
std::vector<ld> miller_sequence(int max_order, ld x) {
    const int start = miller_start(max_order, x);
    std::vector<ld> out(static_cast<std::size_t>(max_order) + 1, 0.0L);
    const ld two_over_x = 2.0L / x;

    ld above = 0.0L;
    ld current = 1.0e-30L;
    ld norm = 0.0L;  // 2 * sum over even orders >= 2, in the running scale
    if (start <= max_order) out[static_cast<std::size_t>(start)] = current;
    for (int k = start; k > 0; --k) {
        const ld below = static_cast<ld>(k) * two_over_x * current - above;
        above = current;
        current = below;
        const int order = k - 1;
        if (order <= max_order) out[static_cast<std::size_t>(order)] = current;
        if (order > 0 && (order & 1) == 0) norm += 2.0L * current;
        if (std::abs(current) > kRescaleAbove) {
            current *= kRescaleBy;
            above *= kRescaleBy;
            norm *= kRescaleBy;
            const int hi = std::min(max_order, start);
            for (int i = order; i <= hi; ++i) out[static_cast<std::size_t>(i)] *= kRescaleBy;
        }
    }
    norm += current;  // J_0
    for (auto& v : out) v /= norm;
    return out;
}

// Ascending series, used where x^2 / 4 is small against the order.
ld series_value(int n, ld x) {
    const ld half = x / 2.0L;
    const ld log_prefactor = n * std::log(half) - std::lgamma(static_cast<ld>(n) + 1.0L);
    const ld q = -half * half;
    ld term = 1.0L;
    ld sum = 1.0L;
    for (int k = 1; k < 10000; ++k) {
        term *= q / (static_cast<ld>(k) * static_cast<ld>(n + k));
        sum += term;
        if (std::abs(term) < 1.0e-22L * std::abs(sum)) break;
    }
    return std::exp(log_prefactor) * sum;
}

bool use_series(int n, double x) { return x <= 2.0 || x * x <= n + 1.0; }

// Smallest order k > |x| such that the generalized bound for J_k(x, 0)
// and all higher orders is below exp(log_tol).
int truncation_order(double x, double log_tol) {
    const double ax = std::abs(x);
    int k = static_cast<int>(std::ceil(ax)) + 1;
    if (ax == 0.0) return 1;
    // The bound is decreasing in k for k > |x|; step in growing increments.
    int step = 1;
    while (log_bessel_bound(k, ax) > log_tol) {
        k += step;
        step = std::min(step * 2, 16);
        if (k > kMaxOrder) break;
    }
    return k;
}

ScaledValue from_log(double log_mag, int sign) {
    ScaledValue s;
    s.log_magnitude = log_mag;
    s.sign = sign;
    if (log_mag < std::log(DBL_MIN)) {
        s.value = 0.0;
        s.underflow = true;
    } else {
        s.value = sign * std::exp(log_mag);
    }
    return s;
}

void check_asymptotic_domain(int n, double x) {
    if (!(x > 0.0)) throw DomainError("x", "asymptotic form requires x > 0");
    if (!(static_cast<double>(n) > x))
        throw DomainError("n", "asymptotic form requires n > x (cosh a = n/x > 1)");
}

// log J_n(x) from the large-order form, n > x > 0.
double log_asymptotic(int n, double x) {
    const double nd = n;
    const double s = std::sqrt((nd - x) * (nd + x));  // n tanh a
    const double a = std::log((nd + s) / x);
    return s - nd * a - 0.5 * std::log(constants::two_pi * s);
}

}  // namespace

std::vector<double> bessel_j_sequence(int max_order, double x) {
    if (max_order < 0) throw DomainError("max_order", "must be non-negative");
    check_inputs(max_order, x);
    std::vector<double> out(static_cast<std::size_t>(max_order) + 1, 0.0);
    if (x == 0.0) {
        out[0] = 1.0;
        return out;
    }
    const auto seq = miller_sequence(max_order, std::abs(static_cast<ld>(x)));
    for (int k = 0; k <= max_order; ++k) {
        const ld v = seq[static_cast<std::size_t>(k)];
        out[static_cast<std::size_t>(k)] = static_cast<double>(x < 0.0 ? odd_sign(k) * v : v);
    }
    return out;
}

BesselEval bessel_j_eval(int n, double x) {
    check_inputs(n, x);
    BesselEval e;
    e.order = n;
    e.x = x;
    int sign = 1;
    if (n < 0) {
        n = -n;
        sign *= odd_sign(n);
    }
    if (x < 0.0) {
        x = -x;
        sign *= odd_sign(n);
    }
    if (x == 0.0) {
        e.value = n == 0 ? 1.0 : 0.0;
        e.method = BesselMethod::series;
        return e;
    }
    constexpr double eps = std::numeric_limits<ld>::epsilon();
    if (use_series(n, x)) {
        e.value = sign * static_cast<double>(series_value(n, x));
        e.method = BesselMethod::series;
        e.est_error = 16.0 * eps;
    } else {
        const auto seq = miller_sequence(n, x);
        e.value = sign * static_cast<double>(seq.back());
        e.method = BesselMethod::recurrence;
        e.est_error = eps * miller_start(n, x);
    }
    return e;
}

double bessel_j(int n, double x) { return bessel_j_eval(n, x).value; }

double log_bessel_bound(int n, double u, double v) {
    const double a = std::abs(u);
    const double b = std::abs(v);
    const double m = std::abs(static_cast<double>(n));
    if (a + 2.0 * b >= m) return 0.0;  // minimum at tau = 0
    if (a == 0.0 && b == 0.0) return -std::numeric_limits<double>::infinity();
    // f'(tau) = a cosh(tau) + 2b cosh(2 tau) - m = 0, quadratic in cosh(tau).
    double c;
    if (b == 0.0) {
        c = m / a;
    } else {
        c = (-a + std::sqrt(a * a + 16.0 * b * (2.0 * b + m))) / (8.0 * b);
    }
    const double tau = std::acosh(c);
    return std::min(0.0, a * std::sinh(tau) + b * std::sinh(2.0 * tau) - m * tau);
}

GeneralizedBessel::GeneralizedBessel(double v) : v_(v) {
    check_inputs(0, v);
    kmax_ = truncation_order(v, kLogDropped);
    if (v == 0.0) {
        jv_.assign(1, 1.0L);
        kmax_ = 0;
    } else {
        jv_ = miller_sequence(kmax_, std::abs(static_cast<ld>(v)));
        if (v < 0.0)
            for (int k = 1; k <= kmax_; k += 2) jv_[static_cast<std::size_t>(k)] *= -1.0L;
    }
    // sum over |k| > kmax of |J_k(v)|; the bound decays at least geometrically
    // by exp(-1) per order past truncation_order.
    tail_bound_ = v == 0.0 ? 0.0 : 2.0 * std::exp(log_bessel_bound(kmax_ + 1, v)) / (1.0 - std::exp(-1.0));
}

long double GeneralizedBessel::jv_at(int k) const {
    const int ak = std::abs(k);
    if (ak > kmax_) return 0.0L;
    const ld val = jv_[static_cast<std::size_t>(ak)];
    return k < 0 ? odd_sign(ak) * val : val;
}

double GeneralizedBessel::operator()(int n, double u) const {
    check_inputs(n, u);
    const int umax = u == 0.0 ? 0 : truncation_order(u, kLogDropped);
    std::vector<ld> ju;
    if (u == 0.0) {
        ju.assign(1, 1.0L);
    } else {
        ju = miller_sequence(umax, std::abs(static_cast<ld>(u)));
        if (u < 0.0)
            for (int m = 1; m <= umax; m += 2) ju[static_cast<std::size_t>(m)] *= -1.0L;
    }
    auto ju_at = [&](int m) -> ld {
        const int am = std::abs(m);
        if (am > umax) return 0.0L;
        const ld val = ju[static_cast<std::size_t>(am)];
        return m < 0 ? odd_sign(am) * val : val;
    };

    // Terms need |k| <= kmax and |n - 2k| <= umax.
    const int k_lo = std::max(-kmax_, static_cast<int>(std::ceil((n - umax) / 2.0)));
    const int k_hi = std::min(kmax_, static_cast<int>(std::floor((n + umax) / 2.0)));
    ld sum = 0.0L;
    ld comp = 0.0L;
    for (int k = k_lo; k <= k_hi; ++k) {
        const ld term = ju_at(n - 2 * k) * jv_at(k) - comp;
        const ld t = sum + term;
        comp = (t - sum) - term;
        sum = t;
    }

    // Dropped terms: |k| > kmax contributes at most tail_bound_ (|J_m(u)| <= 1);
    // |n - 2k| > umax contributes at most sum_k |J_k(v)| * e^kLogDropped.
    const double v_mass = std::sqrt(2.0 * kmax_ + 1.0);  // >= sum |J_k(v)| by Cauchy-Schwarz
    const double u_tail = u == 0.0 ? 0.0 : 2.0 * std::exp(kLogDropped) / (1.0 - std::exp(-1.0));
    const double tail = tail_bound_ + v_mass * u_tail;
    if (!(tail < 1.0e-14))
        throw AccuracyError("generalized Bessel: truncated tail not below 1e-14",
                            {static_cast<double>(sum), tail});
    return static_cast<double>(sum);
}

double gen_bessel_j(int n, double u, double v) { return GeneralizedBessel(v)(n, u); }

ScaledValue bessel_asymptotic(int n, double x) {
    check_asymptotic_domain(n, x);
    return from_log(log_asymptotic(n, x), 1);
}

ScaledValue bessel_sq_asymptotic(int n, double x) {
    check_asymptotic_domain(n, x);
    return from_log(2.0 * log_asymptotic(n, x), 1);
}

double log_bessel_sq_exp_n2_variant(int n, double x) {
    check_asymptotic_domain(n, x);
    const double nd = n;
    const double s = std::sqrt((nd - x) * (nd + x));
    return 2.0 * nd * std::log(x) + (nd * nd - x * x) - 2.0 * nd * std::log(nd + s) -
           std::log(constants::two_pi * s);
}

double bessel_asymptotic_error_estimate(int n, double x) {
    check_asymptotic_domain(n, x);
    const double nd = n;
    const double t = nd / std::sqrt((nd - x) * (nd + x));  // coth a
    return std::abs((3.0 * t - 5.0 * t * t * t) / 24.0) / nd;
}

}  // namespace sfi
