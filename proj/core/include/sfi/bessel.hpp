#pragma once

#include <vector>

namespace sfi {

enum class BesselMethod { recurrence, series, quadrature, asymptotic };

struct BesselEval {
    int order = 0;
    double x = 0.0;
    double value = 0.0;
    BesselMethod method = BesselMethod::recurrence;
    double est_error = 0.0;  // relative
};

// Result of a log-space evaluation brought back to linear scale. Values below
// the smallest normal double are returned as 0.0 with `underflow` set.
struct ScaledValue {
    double value = 0.0;
    double log_magnitude = 0.0;
    int sign = 1;
    bool underflow = false;
};

// Integer-order Bessel function of the first kind J_n(x). Small arguments use
// the ascending series, everything else Miller's backward recurrence in
// extended precision. Negative orders and arguments go through
// J_{-n}(x) = (-1)^n J_n(x) and J_n(-x) = (-1)^n J_n(x).
// Throws RangeError for non-finite or overflow-scale inputs.
double bessel_j(int n, double x);
BesselEval bessel_j_eval(int n, double x);

// J_0(x) .. J_max_order(x) from a single recurrence pass.
std::vector<double> bessel_j_sequence(int max_order, double x);

// Upper bound on log|J_n(u, v)| from shifting the generating integral off the
// real axis: min over tau >= 0 of |u| sinh(tau) + |v| sinh(2 tau) - |n| tau.
// With v = 0 this bounds the ordinary J_n(u). Never positive.
double log_bessel_bound(int n, double u, double v = 0.0);

// Two-argument generalized Bessel function
//   J_n(u, v) = sum_k J_{n-2k}(u) J_k(v)
//            = (1/2pi) int_{-pi}^{pi} cos(u sin t + v sin 2t - n t) dt.
// Throws AccuracyError (carrying the partial sum) if the neglected tail
// cannot be bounded below 1e-14.
double gen_bessel_j(int n, double u, double v);

// Generalized Bessel evaluator with the second argument held fixed; the
// J_k(v) table is built once and reused across (n, u) queries.
class GeneralizedBessel {
public:
    explicit GeneralizedBessel(double v);

    double operator()(int n, double u) const;
    double v() const noexcept { return v_; }

private:
    double v_;
    int kmax_;
    std::vector<long double> jv_;  // J_0(v) .. J_kmax(v)
    double tail_bound_;

    long double jv_at(int k) const;
};

// Large-order form valid for n > x > 0 with cosh(a) = n / x:
//   J_n(x) ~ exp(n tanh a - n a) / sqrt(2 pi n tanh a),
// evaluated through n tanh a = sqrt(n^2 - x^2) and
// exp(-n a) = x^n / (n + sqrt(n^2 - x^2))^n. Throws DomainError when n <= x.
ScaledValue bessel_asymptotic(int n, double x);

// Square of bessel_asymptotic:
//   x^{2n} exp(2 sqrt(n^2 - x^2)) / (2 pi sqrt(n^2 - x^2) (n + sqrt(n^2 - x^2))^{2n}).
ScaledValue bessel_sq_asymptotic(int n, double x);

// Natural log of the squared form with exp(n^2 - x^2) in place of
// exp(2 sqrt(n^2 - x^2)). Kept only to quantify how far that variant is off.
double log_bessel_sq_exp_n2_variant(int n, double x);

// Relative size of the first omitted Debye correction, |u_1(coth a)| / n.
double bessel_asymptotic_error_estimate(int n, double x);

}  // namespace sfi
