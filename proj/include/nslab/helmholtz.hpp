#pragma once

#include "nslab/field.hpp"
#include "nslab/grid.hpp"

namespace nslab {

/// div-form output of the half-space projection: Pf = div F' contracting the
/// first index, (Pf)_c = sum_m D_m F'_{mc}. The n-th row of F' has zero wall
/// trace, which is what the Duhamel integration by parts relies on.
struct ProjectedForcing {
    MatrixField fprime;
    /// |<div F', grad w>| / (||div F'|| ||grad w||) against smooth interior
    /// test functions: the weak divergence-free contract.
    double weak_div_residual = 0.0;
    /// Wall value of (Pf)_n relative to the field size.
    double wall_flux_residual = 0.0;
    /// Input boundary rows exceeded 1e-8 * max|F|.
    bool trace_warning = false;

    explicit ProjectedForcing(const HalfSpaceGrid& g) : fprime(g) {}
};

/// Evaluates the projection's component formulas per tangential mode with
/// exact doubled-box kernel algebra. Requires a symmetric input with
/// vanishing boundary rows; nonzero traces raise the warning flag and the
/// surviving wall terms are retained through the layer-potential profile.
ProjectedForcing project_div_form(const SymTensorField& F, bool with_diagnostics = true);

/// Pf = div F' with spectral tangential and fourth-order normal derivatives.
VectorField projected_divergence(const ProjectedForcing& pf);

/// Norm ratio ||F'|| / ||F||: the homogeneous Besov ratio for alpha > 0, the
/// L^p ratio for alpha = 0; zero input reports 0.
double projection_norm_check(const SymTensorField& F, double alpha, double p);

}  // namespace nslab
