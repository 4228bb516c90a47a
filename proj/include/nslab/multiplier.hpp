#pragma once

#include "nslab/grid.hpp"

namespace nslab {

struct MultiplierDecay {
    double measured;  // L^1 norm of the band-limited heat multiplier kernel
    double bound;     // exp(-t * 2^{2j} / 8)
};

/// L^1 size of the kernel of Phi_j(xi) exp(-t|xi|^2) on the doubled box,
/// against the dyadic decay bound; the harness fits the constant over a
/// (j, t) sweep.
MultiplierDecay multiplier_decay_check(const HalfSpaceGrid& grid, int j, double t);

/// Largest band whose fat filter (support up to 2^{j+2}) fits inside both
/// the tangential and the doubled-interval normal Nyquist limits.
int fat_band_max(const HalfSpaceGrid& grid);

}  // namespace nslab
