#pragma once

#include <vector>

#include "nslab/field.hpp"
#include "nslab/grid.hpp"
#include "nslab/spectral.hpp"

namespace nslab {

/// Heat kernel (4*pi*t)^{-n/2} exp(-|x|^2/(4t)). Throws for t <= 0.
double gauss_kernel(const double* x, int n, double t);

/// One kernel application record.
struct HeatApplication {
    double t;
    ReflectionKind reflection;
    VectorField result;
};

/// Gamma_t acting on half-space data: tangential multiplier exp(-t|xi'|^2),
/// normal direction evolved on the doubled interval after zero/odd/even
/// extension. Odd output has zero wall trace; Even has zero wall flux.
/// Uniform normal meshes use the doubled-interval transform; graded meshes
/// fall back to direct quadrature of the truncated image kernel.
ScalarField heat_convolve(const ScalarField& u0, double t, ReflectionKind refl);
VectorField heat_convolve(const VectorField& u0, double t, ReflectionKind refl);
SymTensorField heat_convolve(const SymTensorField& u0, double t, ReflectionKind refl);

/// Starred operator: the zero-extension evolution evaluated at (x', -x_n).
ScalarField heat_convolve_starred(const ScalarField& u0, double t);
VectorField heat_convolve_starred(const VectorField& u0, double t);

/// t_k^{alpha/2} * ||Gamma_t * u0||_{L^p} over the time grid.
std::vector<double> heat_decay_profile(const FieldBase& u0, const TimeGrid& times, double p,
                                       double alpha);

}  // namespace nslab
