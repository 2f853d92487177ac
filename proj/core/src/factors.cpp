#include "sfi/factors.hpp"

#include <cfloat>
#include <cmath>

#include "sfi/errors.hpp"

namespace sfi {
namespace {

ScaledValue exp_of(double log_value) {
    ScaledValue s;
    s.log_magnitude = log_value;
    if (log_value < std::log(DBL_MIN)) {
        s.value = 0.0;
        s.underflow = true;
    } else {
        s.value = std::exp(log_value);
    }
    return s;
}

}  // namespace

ScaledValue tunneling_rate_factor(double field, double eb) {
    if (!(field > 0.0)) throw DomainError("field", "electric field must be positive");
    if (!(eb > 0.0)) throw DomainError("eb", "binding energy must be positive");
    return exp_of(-(2.0 / 3.0) * std::pow(2.0 * eb, 1.5) / field);
}

ScaledValue toll_wheeler_factor(double omega_ratio, double field_ratio) {
    if (!(omega_ratio >= 0.0)) throw DomainError("omega_ratio", "must be non-negative");
    if (!(field_ratio >= 0.0)) throw DomainError("field_ratio", "must be non-negative");
    const double chi = omega_ratio * field_ratio;
    if (chi == 0.0) {
        ScaledValue s;
        s.log_magnitude = -HUGE_VAL;
        s.underflow = true;
        return s;
    }
    return exp_of(-4.0 / (3.0 * chi));
}

ExponentFit tunneling_exponent_fit(const std::vector<RateSample>& samples,
                                   const std::vector<double>& weights) {
    if (samples.size() < 3) throw FitError("exponent fit needs at least three samples");
    if (!weights.empty() && weights.size() != samples.size())
        throw FitError("weights and samples differ in length");

    double sw = 0.0, sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        if (!(s.field > 0.0) || !(s.rate > 0.0))
            throw FitError("exponent fit needs E > 0 and W > 0 for every sample");
        const double w = weights.empty() ? 1.0 : weights[i];
        if (!(w >= 0.0)) throw FitError("weights must be non-negative");
        sw += w;
        sx += w / s.field;
        sy += w * std::log(s.rate);
    }
    if (!(sw > 0.0)) throw FitError("all weights are zero");
    const double mx = sx / sw;
    const double my = sy / sw;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double w = weights.empty() ? 1.0 : weights[i];
        const double dx = 1.0 / samples[i].field - mx;
        const double dy = std::log(samples[i].rate) - my;
        sxx += w * dx * dx;
        sxy += w * dx * dy;
        syy += w * dy * dy;
    }
    if (!(sxx > 1e-14 * sw * mx * mx)) throw FitError("degenerate design: all fields coincide");

    ExponentFit fit;
    fit.samples = samples.size();
    const double slope = sxy / sxx;
    fit.c = -slope;
    fit.a = my - slope * mx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double w = weights.empty() ? 1.0 : weights[i];
        const double r = std::log(samples[i].rate) - (fit.a + slope / samples[i].field);
        ssr += w * r * r;
    }
    fit.residual_norm = std::sqrt(ssr / sw);
    fit.r_squared = syy > 0.0 ? 1.0 - ssr / syy : 1.0;
    return fit;
}

ScaledValue tunneling_momentum_profile(const FieldParams& fp, double p_par) {
    const double reach = fp.e0 / fp.omega;  // maximal drift momentum
    const double q = p_par / reach;
    if (!(std::abs(q) < 1.0)) {
        ScaledValue s;
        s.log_magnitude = -HUGE_VAL;
        s.underflow = true;
        return s;
    }
    const double field = fp.e0 * std::sqrt((1.0 - q) * (1.0 + q));
    return tunneling_rate_factor(field, fp.eb);
}

}  // namespace sfi
