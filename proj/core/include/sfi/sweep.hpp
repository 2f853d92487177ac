#pragma once

#include <vector>

#include "sfi/bound_states.hpp"
#include "sfi/factors.hpp"
#include "sfi/params.hpp"
#include "sfi/rates.hpp"

namespace sfi {

enum class SweepObservable { lowest_channel, total_rate };

// Field sweep for exponent fits. One sample per photon order n: U_p runs over
// the interval in which n is the lowest open channel,
//   U_p = n omega - E_B - delta omega,  0 < delta < 1,
// and the observable is averaged over `delta_points` midpoints in delta. This
// removes the channel-closing modulation that otherwise dominates ln W. The
// sample's field is the peak field at delta = 1/2 for the given polarization.
// A channel is kept when its delta = 1/2 parameters satisfy
// gamma_k.lo <= gamma_K <= gamma_k.hi and beta0 < beta0_max.
struct SweepSpec {
    double omega = 0.057;
    BoundStateModel state = BoundStateModel::hydrogen_1s();
    Range gamma_k{0.2, 0.5};
    double beta0_max = 0.1;
    int delta_points = 16;
    RateOptions rate{};
    QuadSpec quad{};
};

struct SweepPoint {
    int n = 0;
    FieldParams mid;  // parameters at delta = 1/2
    double value = 0.0;
};

std::vector<SweepPoint> channel_averaged_sweep(const SweepSpec& spec, Polarization pol,
                                               SweepObservable observable, unsigned threads = 1);

std::vector<RateSample> to_samples(const std::vector<SweepPoint>& points);

}  // namespace sfi
