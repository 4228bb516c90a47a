#pragma once

#include "nslab/field.hpp"
#include "nslab/grid.hpp"

namespace nslab {

/// Newtonian kernel N(x): 1/(omega_n (2-n) |x|^{n-2}) for n >= 3,
/// ln|x|/(2 pi) for n = 2.
double newton_kernel(const double* x, int n);

struct PotentialDiagnostics {
    bool decay_ok = true;      // last two rows <= 1e-6 * max|f|
    double tail_magnitude = 0.0;
};

/// Volume potential of the Laplacian: w with Delta w = f. Mixed
/// representation: tangential DFT, then the 1D kernel
/// exp(-|xi'||x_n - y_n|)/(-2|xi'|) integrated by trapezoid in y_n; the
/// xi' = 0 mode uses the upward-decaying Green kernel (y-x)_+ on [0, H].
ScalarField newton_volume(const ScalarField& f, PotentialDiagnostics* diag = nullptr);

/// Locked tangential symbols for the wall-data operators. All are zero on
/// the xi' = 0 mode except NormalDerivative (-1/2) and Harmonic (1).
enum class PoissonProfile {
    Potential,         // -exp(-|xi'| x_n) / (2|xi'|)
    NormalDerivative,  // -exp(-|xi'| x_n) / 2   (pairs with riesz_tangential)
    Harmonic,          //  exp(-|xi'| x_n)       (harmonic extension of g)
};

ScalarField poisson_boundary(const BoundaryField& g, PoissonProfile profile);

/// Tangential Riesz transform, multiplier i*xi_i/|xi'| (zero mode -> 0).
ScalarField riesz_tangential(const ScalarField& f, int axis);
BoundaryField riesz_tangential(const BoundaryField& f, int axis);

}  // namespace nslab
