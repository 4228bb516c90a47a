#pragma once

#include <vector>

#include "nslab/field.hpp"
#include "nslab/grid.hpp"
#include "nslab/spectral.hpp"

namespace nslab {

/// Per-row finite-difference stencils for normal derivatives (Fornberg
/// weights on a sliding 5-node window: fourth order on the uniform mesh,
/// one-sided at the boundary rows).
class NormalDerivative {
  public:
    NormalDerivative(const HalfSpaceGrid& grid, int order);  // order = 1 or 2

    /// Applies the stencil to one component laid out [rows][tan].
    void apply(const HalfSpaceGrid& grid, const double* in, double* out) const;

  private:
    std::size_t width_ = 5;
    std::vector<std::size_t> first_;       // window start per row
    std::vector<double> weights_;          // [rows][width]
};

/// div f with spectral tangential derivatives and the fourth-order normal
/// stencil (one-sided at the wall and truncation rows).
ScalarField divergence(const VectorField& f);

/// The x_n = 0 node row of every component.
std::vector<BoundaryField> boundary_trace(const VectorField& f);
BoundaryField boundary_trace(const ScalarField& f);

/// L^p norm over the half-space box: trapezoid in the normal direction,
/// exact uniform weights tangentially, pointwise Euclidean magnitude for
/// multi-component fields, max over nodes for p = infinity.
double lp_norm(const FieldBase& f, double p);

/// Gradient of a scalar (spectral tangential, FD normal).
VectorField gradient(const ScalarField& f);

/// Laplacian (spectral tangential, fourth-order FD normal second derivative).
ScalarField laplacian(const ScalarField& f);

/// Componentwise helpers used by solvers and tests.
ScalarField scalar_component(const FieldBase& f, std::size_t c);

/// Pointwise outer product u (x) u as a symmetric tensor, optionally with
/// the 2/3-rule tangential truncation applied to each product component.
SymTensorField outer_product(const VectorField& u, bool dealias_product);

double linf_boundary(const std::vector<BoundaryField>& tr);

}  // namespace nslab
