#include "nslab/scenario.hpp"

#include <cmath>
#include <stdexcept>

#include "nslab/besov.hpp"
#include "nslab/ops.hpp"
#include "nslab/rng.hpp"
#include "nslab/spectral.hpp"
#include "nslab/stokes.hpp"

namespace nslab {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kWallA = 0.30;
constexpr double kWallB = 0.95;

double sigma(double y) { return y > 0.0 ? std::exp(-1.0 / y) : 0.0; }

struct Mode {
    int k[2];    // tangential integer wavenumbers
    int m;       // normal sine frequency (nu = pi*m/H)
    double amp;
    double phase;
};

// Lattice modes with |xi| within `width` of 2^j (relative), at most `count`.
// Bounds derive from the band, not the grid, so a seed names the same
// continuum datum on every refinement level.
std::vector<Mode> sample_band_modes(const HalfSpaceGrid& g, int j, std::size_t count, Rng& rng,
                                    double width = 0.03) {
    const double target = std::pow(2.0, double(j));
    const int naxes = g.dim() - 1;
    const int kmax = int(std::ceil(1.1 * target * g.length() / (2.0 * kPi)));
    const int mmax = int(std::ceil(1.1 * target * g.height() / kPi));
    std::vector<Mode> found;
    for (double w = width; found.size() < 4 && w < 0.5; w *= 2.0) {
        found.clear();
        std::vector<Mode> lattice;
        for (int k0 = -kmax; k0 <= kmax; ++k0)
            for (int k1 = naxes == 2 ? -kmax : 0; k1 <= (naxes == 2 ? kmax : 0); ++k1)
                for (int m = 1; m <= mmax; ++m) {
                    double x0 = 2.0 * kPi * double(k0) / g.length();
                    double x1 = 2.0 * kPi * double(k1) / g.length();
                    double nu = kPi * double(m) / g.height();
                    double mag = std::sqrt(x0 * x0 + x1 * x1 + nu * nu);
                    if (std::fabs(mag - target) <= w * target)
                        lattice.push_back({{k0, k1}, m, 0.0, 0.0});
                }
        // deterministic subsample
        while (!lattice.empty() && found.size() < count) {
            std::size_t pick = std::size_t(rng.uniform() * double(lattice.size()));
            pick = std::min(pick, lattice.size() - 1);
            Mode md = lattice[pick];
            lattice.erase(lattice.begin() + long(pick));
            md.amp = 0.5 + rng.uniform();
            md.phase = rng.uniform(0.0, 2.0 * kPi);
            found.push_back(md);
        }
        if (found.size() >= std::min<std::size_t>(count, 4)) break;
    }
    if (found.empty()) throw std::runtime_error("sample_band_modes: no lattice modes in band");
    return found;
}

ScalarField synthesize(const HalfSpaceGrid& g, const std::vector<Mode>& modes) {
    ScalarField f(g);
    const std::size_t rows = g.rows(), tan = g.tan_points(), nt = g.n_tan();
    const int naxes = g.dim() - 1;
    const auto& xn = g.normal_nodes();
    for (const Mode& md : modes) {
        for (std::size_t r = 0; r < rows; ++r) {
            double sn = std::sin(kPi * double(md.m) * xn[r] / g.height());
            for (std::size_t i = 0; i < tan; ++i) {
                std::size_t i0 = i % nt, i1 = naxes == 2 ? i / nt : 0;
                double x0 = double(i0) * g.tan_spacing();
                double x1 = double(i1) * g.tan_spacing();
                double ph = 2.0 * kPi * (double(md.k[0]) * x0 + double(md.k[1]) * x1) / g.length() +
                            md.phase;
                f.at(r, i) += md.amp * std::sin(ph) * sn;
            }
        }
    }
    return f;
}

// u = grad^perp(psi) in 2D or curl(A) in 3D, built from the grid operators
// so the discrete divergence vanishes to rounding.
VectorField stream_velocity(const HalfSpaceGrid& g, const std::vector<ScalarField>& potentials) {
    SpectralEngine eng(g);
    NormalDerivative dn(g, 1);
    VectorField u(g);
    if (g.dim() == 2) {
        const ScalarField& psi = potentials.at(0);
        dn.apply(g, psi.data(), u.component(0));
        std::vector<double> tmp(psi.component_size());
        eng.tangential_derivative(psi.data(), tmp.data(), 0);
        double* c1 = u.component(1);
        for (std::size_t i = 0; i < tmp.size(); ++i) c1[i] = -tmp[i];
        return u;
    }
    const ScalarField& a1 = potentials.at(0);
    const ScalarField& a2 = potentials.at(1);
    const ScalarField& a3 = potentials.at(2);
    std::vector<double> t1(a1.component_size()), t2(a1.component_size());
    // u1 = D2 A3 - Dn A2
    eng.tangential_derivative(a3.data(), t1.data(), 1);
    dn.apply(g, a2.data(), t2.data());
    for (std::size_t i = 0; i < t1.size(); ++i) u.component(0)[i] = t1[i] - t2[i];
    // u2 = Dn A1 - D1 A3
    dn.apply(g, a1.data(), t1.data());
    eng.tangential_derivative(a3.data(), t2.data(), 0);
    for (std::size_t i = 0; i < t1.size(); ++i) u.component(1)[i] = t1[i] - t2[i];
    // u3 = D1 A2 - D2 A1
    eng.tangential_derivative(a2.data(), t1.data(), 0);
    eng.tangential_derivative(a1.data(), t2.data(), 1);
    for (std::size_t i = 0; i < t1.size(); ++i) u.component(2)[i] = t1[i] - t2[i];
    return u;
}

void apply_wall_plateau(ScalarField& f) {
    const HalfSpaceGrid& g = f.grid();
    const auto& xn = g.normal_nodes();
    for (std::size_t r = 0; r < g.rows(); ++r) {
        double s = wall_plateau(xn[r], kWallA, kWallB);
        if (s == 1.0) continue;
        double* row = f.data() + r * g.tan_points();
        for (std::size_t i = 0; i < g.tan_points(); ++i) row[i] *= s;
    }
}

void clean_tangential_mean(VectorField& u) {
    const HalfSpaceGrid& g = u.grid();
    const std::size_t tan = g.tan_points();
    for (std::size_t c = 0; c < u.components(); ++c)
        for (std::size_t r = 0; r < g.rows(); ++r) {
            double* row = u.component(c) + r * tan;
            double mean = 0.0;
            for (std::size_t i = 0; i < tan; ++i) mean += row[i];
            mean /= double(tan);
            for (std::size_t i = 0; i < tan; ++i) row[i] -= mean;
        }
}

}  // namespace

double wall_plateau(double x, double a, double b) {
    double s = (x - a) / (b - a);
    double num = sigma(s);
    double den = num + sigma(1.0 - s);
    return den > 0.0 ? num / den : 0.0;
}

HalfSpaceGrid ScenarioSpec::make_grid(double refine) const {
    HalfSpaceGrid base(dimension, n_tan, n_nor, length, height);
    if (refine == 1.0) return base;
    return base.refined(refine, refine);
}

TimeGrid ScenarioSpec::make_times() const { return TimeGrid(t0, ratio, t_count); }

ScenarioSpec ScenarioSpec::preset(const std::string& name) {
    ScenarioSpec s;
    s.name = name;
    if (name == "default" || name == "desk") return s;
    if (name == "stokes-dipole") {
        s.family = "gauss_dipole";
        s.band = 0;  // plain tangential content
        s.n_nor = 192;
        s.height = 4.0 * kPi;
        return s;
    }
    if (name == "stokes-rich") {
        s.family = "gauss_dipole";
        s.band = 1;  // richer tangential content
        s.n_nor = 192;
        s.height = 4.0 * kPi;
        return s;
    }
    if (name == "stokes-bands") {
        s.family = "band";
        s.band = 2;
        s.n_nor = 144;
        s.height = 3.0 * kPi;
        return s;
    }
    if (name == "stokes-forced") {
        s.family = "gauss_dipole";
        s.band = 0;
        s.n_nor = 192;
        s.height = 4.0 * kPi;
        return s;
    }
    if (name == "picard") {
        s.family = "flat";
        s.bands = {1, 2, 3, 4};
        s.t0 = 1e-5;
        s.t_count = 46;
        s.p0 = 4.0;
        s.p = 4.0 / 3.0;
        return s;
    }
    if (name == "ring3d") {
        // smoke mesh; the tangential count must be a power of two
        s.family = "ring";
        s.dimension = 3;
        s.n_tan = 32;
        s.n_nor = 32;
        return s;
    }
    throw std::invalid_argument("ScenarioSpec::preset: unknown scenario " + name);
}

VectorField generate_initial_data(const ScenarioSpec& spec, const HalfSpaceGrid& grid) {
    const int n = grid.dim();
    VectorField u(grid);
    if (spec.family == "dipole" || spec.family == "dipole_exact") {
        if (n != 2) throw std::invalid_argument("dipole family is two-dimensional");
        ScalarField psi(grid);
        const auto& xn = grid.normal_nodes();
        for (std::size_t r = 0; r < grid.rows(); ++r) {
            double z = xn[r];
            double prof;
            if (spec.family == "dipole_exact") {
                prof = z * z * std::exp(-z);
            } else {
                double c = 1.8, w = 1.0;
                prof = wall_plateau(z, kWallA, kWallB) * std::exp(-((z - c) / w) * ((z - c) / w));
            }
            for (std::size_t i = 0; i < grid.tan_points(); ++i) {
                double x1 = double(i % grid.n_tan()) * grid.tan_spacing();
                psi.at(r, i) = spec.amplitude * prof * std::sin(2.0 * kPi * x1 / grid.length());
            }
        }
        u = stream_velocity(grid, {psi});
    } else if (spec.family == "gauss_dipole") {
        // analytic window: no plateau, so the normal spectrum decays like a
        // Gaussian and finite-difference and spectral derivatives agree to
        // better than the solver's divergence contract
        if (n != 2) throw std::invalid_argument("gauss_dipole family is two-dimensional");
        ScalarField psi(grid);
        const auto& xn = grid.normal_nodes();
        const double c = 0.485 * grid.height();
        const double w = 0.10 * grid.height();
        const bool rich = spec.band == 1;
        const bool twin = spec.band == 2;
        for (std::size_t r = 0; r < grid.rows(); ++r) {
            double prof;
            if (twin) {
                double z1 = (xn[r] - 0.42 * grid.height()) / (0.085 * grid.height());
                double z2 = (xn[r] - 0.56 * grid.height()) / (0.105 * grid.height());
                prof = std::exp(-z1 * z1) + 0.7 * std::exp(-z2 * z2);
            } else {
                double z = (xn[r] - c) / w;
                prof = std::exp(-z * z);
            }
            for (std::size_t i = 0; i < grid.tan_points(); ++i) {
                double x1 = double(i % grid.n_tan()) * grid.tan_spacing();
                double tang = rich ? 0.8 * std::sin(2.0 * kPi * x1 / grid.length() + 0.4) +
                                         std::sin(4.0 * kPi * x1 / grid.length() + 1.7)
                                   : std::sin(2.0 * kPi * x1 / grid.length()) +
                                         0.55 * std::sin(4.0 * kPi * x1 / grid.length() + 1.1);
                psi.at(r, i) = spec.amplitude * prof * tang;
            }
        }
        u = stream_velocity(grid, {psi});
    } else if (spec.family == "ring") {
        if (n != 3) throw std::invalid_argument("ring family is three-dimensional");
        Rng rng(spec.seed ^ 0x9d2c5680u);
        std::vector<ScalarField> pots;
        for (int c = 0; c < 3; ++c) {
            ScalarField a(grid);
            const auto& xn = grid.normal_nodes();
            double ph0 = rng.uniform(0.0, 2.0 * kPi), ph1 = rng.uniform(0.0, 2.0 * kPi);
            for (std::size_t r = 0; r < grid.rows(); ++r) {
                double z = xn[r];
                // wider clearances: the 3D smoke mesh is coarse at the wall
                double cc = 2.6, w = 0.8;
                double prof = wall_plateau(z, 0.9, 1.6) *
                              std::exp(-((z - cc) / w) * ((z - cc) / w));
                for (std::size_t i = 0; i < grid.tan_points(); ++i) {
                    double x1 = double(i % grid.n_tan()) * grid.tan_spacing();
                    double x2 = double(i / grid.n_tan()) * grid.tan_spacing();
                    a.at(r, i) = spec.amplitude * prof *
                                 std::sin(2.0 * kPi * x1 / grid.length() + ph0) *
                                 std::sin(2.0 * kPi * x2 / grid.length() + ph1);
                }
            }
            pots.push_back(std::move(a));
        }
        u = stream_velocity(grid, pots);
    } else if (spec.family == "band") {
        u = solenoidal_band_sample(grid, spec.band, spec.seed, spec.amplitude);
    } else if (spec.family == "flat") {
        const double n_d = double(n);
        u = besov_flat_data(grid, spec.bands, -1.0 + n_d / spec.p0, spec.p0, spec.seed,
                            spec.amplitude);
    } else {
        throw std::invalid_argument("generate_initial_data: unknown family " + spec.family);
    }
    clean_tangential_mean(u);
    // dipole_exact is a differentiation oracle: its stream function does not
    // vanish near the wall, so the discrete trace is O(h^4), not zero
    if (spec.amplitude != 0.0 && spec.family != "dipole_exact") check_stokes_data(u);
    u.require_finite("generate_initial_data");
    return u;
}

ScalarField scalar_band_sample(const HalfSpaceGrid& grid, int j, std::uint64_t seed) {
    Rng rng(seed * 0x100000001b3ull + std::uint64_t(j + 64));
    auto modes = sample_band_modes(grid, j, 12, rng);
    return synthesize(grid, modes);
}

SymTensorField tensor_band_sample(const HalfSpaceGrid& grid, int j, std::uint64_t seed) {
    SymTensorField F(grid);
    const std::size_t n = std::size_t(grid.dim());
    std::uint64_t c = 0;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = k; l < n; ++l) {
            ScalarField s = scalar_band_sample(grid, j, seed + 7919 * (++c));
            double* dst = F.comp(k, l);
            std::copy(s.data(), s.data() + s.size(), dst);
        }
    return F;
}

VectorField solenoidal_band_sample(const HalfSpaceGrid& grid, int j, std::uint64_t seed,
                                   double amplitude) {
    const int n = grid.dim();
    // potentials one octave below the target band: the derivative shifts the
    // energy up to |xi| ~ 2^j
    std::vector<ScalarField> pots;
    const int npots = n == 2 ? 1 : 3;
    for (int c = 0; c < npots; ++c) {
        ScalarField psi = scalar_band_sample(grid, j, seed + 131 * std::uint64_t(c + 1));
        apply_wall_plateau(psi);
        psi.scale(amplitude * std::pow(2.0, -double(j)));
        pots.push_back(std::move(psi));
    }
    return stream_velocity(grid, pots);
}

VectorField besov_flat_data(const HalfSpaceGrid& grid, const std::vector<int>& bands,
                            double s_critical, double p_critical, std::uint64_t seed,
                            double amplitude, std::vector<double>* weights_io) {
    if (bands.empty()) throw std::invalid_argument("besov_flat_data: no bands");
    std::vector<VectorField> pieces;
    for (std::size_t b = 0; b < bands.size(); ++b)
        pieces.push_back(solenoidal_band_sample(grid, bands[b], seed + 31 * b, 1.0));

    if (weights_io && weights_io->size() == bands.size() + 1) {
        VectorField u(grid);
        for (std::size_t b = 0; b < pieces.size(); ++b) u.axpy((*weights_io)[b], pieces[b]);
        u.scale(weights_io->back() * amplitude);
        return u;
    }

    std::vector<double> weights(bands.size(), 1.0);
    const auto inf = std::numeric_limits<double>::infinity();
    for (int pass = 0; pass < 2; ++pass) {
        VectorField u(grid);
        for (std::size_t b = 0; b < pieces.size(); ++b) u.axpy(weights[b], pieces[b]);
        NormReport rep = besov_norm(u, {s_critical, p_critical, inf});
        double target = 0.0;
        std::size_t found = 0;
        for (const auto& bc : rep.bands)
            for (int wanted : bands)
                if (bc.j == wanted && bc.value > 0.0) {
                    target += bc.value;
                    ++found;
                }
        if (found == 0) break;
        target /= double(found);
        for (std::size_t b = 0; b < pieces.size(); ++b) {
            for (const auto& bc : rep.bands)
                if (bc.j == bands[b] && bc.value > 0.0) weights[b] *= target / bc.value;
        }
    }
    VectorField u(grid);
    for (std::size_t b = 0; b < pieces.size(); ++b) u.axpy(weights[b], pieces[b]);
    NormReport rep = besov_norm(u, {s_critical, p_critical, inf});
    double scale = rep.value > 0.0 ? 1.0 / rep.value : 1.0;
    u.scale(scale * amplitude);
    if (weights_io) {
        *weights_io = weights;
        weights_io->push_back(scale);
    }
    return u;
}

std::vector<VectorField> ensemble_u0(const HalfSpaceGrid& grid, std::size_t count,
                                     std::uint64_t seed) {
    std::vector<VectorField> out;
    const int jlo = std::max(grid.j_min() + 1, 1);
    const int jhi = std::max(jlo, grid.j_max() - 3);
    for (std::size_t i = 0; i < count; ++i) {
        int j = jlo + int(i % std::size_t(jhi - jlo + 1));
        out.push_back(solenoidal_band_sample(grid, j, seed + 977 * i, 1.0));
    }
    return out;
}

std::vector<SymTensorField> ensemble_tensors(const HalfSpaceGrid& grid, std::size_t count,
                                             std::uint64_t seed) {
    std::vector<SymTensorField> out;
    const int jlo = std::max(grid.j_min() + 1, 1);
    const int jhi = std::max(jlo, grid.j_max() - 2);
    for (std::size_t i = 0; i < count; ++i) {
        int j = jlo + int(i % std::size_t(jhi - jlo + 1));
        out.push_back(tensor_band_sample(grid, j, seed + 499 * i));
    }
    return out;
}

}  // namespace nslab
