#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nslab/field.hpp"
#include "nslab/grid.hpp"

namespace nslab {

/// A scenario owns its grid, time grid, data family and exponents. Seeded
/// families are synthesized from explicit mode lists (integer tangential
/// wavenumbers, integer normal sine frequencies), so the same continuum
/// datum is evaluable on every refinement level and byte-identical per seed.
struct ScenarioSpec {
    std::string name = "default";
    int dimension = 2;
    std::size_t n_tan = 128;
    std::size_t n_nor = 96;
    double length = 6.283185307179586;
    double height = 6.283185307179586;

    std::string family = "dipole";  // dipole | dipole_exact | ring | band | flat
    double amplitude = 1.0;
    std::uint64_t seed = 1;
    int band = 3;
    std::vector<int> bands = {1, 2, 3, 4};

    double p = 4.0 / 3.0;
    double p0 = 4.0;
    double p1 = 2.0;
    double alpha = 0.5;

    double t0 = 1e-3;
    double ratio = 1.189207115002721;  // 2^{1/4}
    std::size_t t_count = 48;

    HalfSpaceGrid make_grid(double refine = 1.0) const;
    TimeGrid make_times() const;

    static ScenarioSpec preset(const std::string& name);
};

/// Stream-function / vector-potential construction with the grid's own
/// discrete operators, so the divergence vanishes to rounding; the wall
/// plateau makes the trace exactly zero. Throws when the invariants fail
/// after cleaning.
VectorField generate_initial_data(const ScenarioSpec& spec, const HalfSpaceGrid& grid);

/// Smooth cutoff: identically 0 for x <= a, identically 1 for x >= b.
double wall_plateau(double x, double a, double b);

/// Band-limited scalar sample with odd normal structure (wall and top rows
/// exactly zero): a seeded sum of lattice modes with |xi| within 3% of 2^j.
ScalarField scalar_band_sample(const HalfSpaceGrid& grid, int j, std::uint64_t seed);

/// Symmetric tensor whose components are independent band samples.
SymTensorField tensor_band_sample(const HalfSpaceGrid& grid, int j, std::uint64_t seed);

/// Solenoidal zero-trace sample concentrated near band j (stream function /
/// vector potential times the wall plateau).
VectorField solenoidal_band_sample(const HalfSpaceGrid& grid, int j, std::uint64_t seed,
                                   double amplitude);

/// Solenoidal data whose critical-norm band contributions are flattened over
/// the requested bands (measured and rescaled, two passes). When weights_io
/// arrives non-empty the stored weights are reused verbatim, so refinement
/// levels evaluate the identical continuum datum; on return it holds the
/// weights used (band weights followed by the overall scale).
VectorField besov_flat_data(const HalfSpaceGrid& grid, const std::vector<int>& bands,
                            double s_critical, double p_critical, std::uint64_t seed,
                            double amplitude, std::vector<double>* weights_io = nullptr);

/// Seeded ensembles for fitted-constant checks.
std::vector<VectorField> ensemble_u0(const HalfSpaceGrid& grid, std::size_t count,
                                     std::uint64_t seed);
std::vector<SymTensorField> ensemble_tensors(const HalfSpaceGrid& grid, std::size_t count,
                                             std::uint64_t seed);

}  // namespace nslab
