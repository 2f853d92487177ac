#pragma once

#include <vector>

#include "sfi/bessel.hpp"
#include "sfi/params.hpp"

namespace sfi {

// exp[-(2/3) (2 E_B)^{3/2} / E], the linear-polarization tunneling factor.
// Throws DomainError for E <= 0 or E_B <= 0.
ScaledValue tunneling_rate_factor(double field, double eb);

// Toll-Wheeler pair-production factor exp(-4 / (3 chi)) with
// chi = (omega~/m) (E/E_crit). chi = 0 gives 0 with the underflow flag set.
ScaledValue toll_wheeler_factor(double omega_ratio, double field_ratio);

struct RateSample {
    double field = 0.0;
    double rate = 0.0;
};

struct ExponentFit {
    double c = 0.0;              // ln W = a - C / E
    double a = 0.0;
    double residual_norm = 0.0;  // sqrt(sum w_i r_i^2 / sum w_i) in ln W
    double r_squared = 0.0;
    std::size_t samples = 0;
};

// Weighted least squares of ln W against 1/E. Empty weights mean uniform.
// Needs >= 3 samples with E > 0 and W > 0; a singular design (all E equal)
// throws FitError.
ExponentFit tunneling_exponent_fit(const std::vector<RateSample>& samples,
                                   const std::vector<double>& weights = {});

// Quasistatic tunneling model of the momentum distribution along the
// polarization axis: an electron ending with drift momentum p_par was born at
// the phase where the vector potential gives p_par, i.e. at instantaneous
// field E0 sqrt(1 - (p_par omega / E0)^2); its weight is the tunneling factor
// at that field. Zero outside |p_par| < E0 / omega.
ScaledValue tunneling_momentum_profile(const FieldParams& fp, double p_par);

}  // namespace sfi
