#pragma once

#include <vector>

#include "sfi/bound_states.hpp"
#include "sfi/params.hpp"
#include "sfi/rates.hpp"

namespace sfi {

struct MomentumGridSpec {
    double p_par_max = 1.0;   // p_par axis spans [-max, max]
    double p_perp_max = 1.0;  // p_perp axis spans [-max, max]
    std::size_t n_par = 101;
    std::size_t n_perp = 101;
    // Gaussian energy-smoothing width. Negative selects omega / 2; zero puts
    // each channel on its exact ring (cells within half a grid step of p_n).
    double kernel_width = -1.0;
};

// Differential rate on a (p_par, p_perp) plane. For linear polarization p_par
// runs along the polarization vector and p_perp along the propagation axis;
// for circular polarization p_par runs along the propagation axis.
struct RateGrid {
    std::vector<double> p_par;
    std::vector<double> p_perp;
    std::vector<double> values;  // values[i_perp * p_par.size() + j_par]
    FieldParams field;
    BoundStateModel state;
    double kernel_width = 0.0;

    double at(std::size_t i_perp, std::size_t j_par) const {
        return values[i_perp * p_par.size() + j_par];
    }
};

// Each open channel contributes its angular density dW_n/dOmega, taken at the
// ring momentum p_n and the cell's direction, weighted by the energy kernel
// evaluated at p^2/2 - p_n^2/2.
RateGrid momentum_map(const FieldParams& fp, const BoundStateModel& state,
                      const MomentumGridSpec& grid, const RateOptions& opt = {},
                      unsigned threads = 1);

}  // namespace sfi
