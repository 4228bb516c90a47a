#include "nslab/heat.hpp"

#include <cmath>
#include <stdexcept>

#include "nslab/ops.hpp"

namespace nslab {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

double heat1d(double z, double t) { return std::exp(-z * z / (4.0 * t)) / std::sqrt(4.0 * kPi * t); }

// Transform path on the doubled interval, one component.
void evolve_component(const SpectralEngine& eng, const double* in, double* out, double t,
                      ReflectionKind refl) {
    const std::size_t rows = eng.rows(), tan = eng.tan(), m = eng.doubled_size();
    std::vector<cplx> spec(rows * tan);
    eng.tan_forward(in, spec.data());
    std::vector<double> mult_nu(m);
    for (std::size_t q = 0; q < m; ++q) mult_nu[q] = std::exp(-t * eng.nu(q) * eng.nu(q));
    std::vector<cplx> prof(rows), dbl(m);
    for (std::size_t it = 0; it < tan; ++it) {
        const double k = eng.mode_mag(it);
        const double mt = std::exp(-t * k * k);
        for (std::size_t r = 0; r < rows; ++r) prof[r] = spec[r * tan + it];
        eng.extend_profile(prof.data(), refl, dbl.data());
        eng.profile_fft(dbl.data());
        for (std::size_t q = 0; q < m; ++q) dbl[q] *= mt * mult_nu[q];
        eng.profile_ifft(dbl.data());
        eng.restrict_profile(dbl.data(), prof.data(), false);
        for (std::size_t r = 0; r < rows; ++r) spec[r * tan + it] = prof[r];
    }
    eng.tan_inverse(spec.data(), out);
}

// Direct quadrature path for graded normal meshes: truncated image kernel.
void evolve_component_quadrature(const HalfSpaceGrid& g, const double* in, double* out, double t,
                                 ReflectionKind refl) {
    SpectralEngine eng(g);
    const std::size_t rows = g.rows(), tan = g.tan_points();
    std::vector<cplx> spec(rows * tan);
    eng.tan_forward(in, spec.data());
    const auto& x = g.normal_nodes();
    const auto& w = g.normal_weights();
    std::vector<cplx> col(rows);
    for (std::size_t it = 0; it < tan; ++it) {
        const double k = eng.mode_mag(it);
        const double mt = std::exp(-t * k * k);
        for (std::size_t r = 0; r < rows; ++r) col[r] = spec[r * tan + it];
        for (std::size_t r = 0; r < rows; ++r) {
            cplx acc{0.0, 0.0};
            for (std::size_t s = 0; s < rows; ++s) {
                double ker = heat1d(x[r] - x[s], t);
                if (refl == ReflectionKind::Odd) ker -= heat1d(x[r] + x[s], t);
                if (refl == ReflectionKind::Even) ker += heat1d(x[r] + x[s], t);
                acc += w[s] * ker * col[s];
            }
            spec[r * tan + it] = mt * acc;
        }
    }
    eng.tan_inverse(spec.data(), out);
}

void starred_component(const SpectralEngine& eng, const double* in, double* out, double t) {
    const std::size_t rows = eng.rows(), tan = eng.tan(), m = eng.doubled_size();
    std::vector<cplx> spec(rows * tan);
    eng.tan_forward(in, spec.data());
    std::vector<double> mult_nu(m);
    for (std::size_t q = 0; q < m; ++q) mult_nu[q] = std::exp(-t * eng.nu(q) * eng.nu(q));
    std::vector<cplx> prof(rows), dbl(m);
    for (std::size_t it = 0; it < tan; ++it) {
        const double k = eng.mode_mag(it);
        const double mt = std::exp(-t * k * k);
        for (std::size_t r = 0; r < rows; ++r) prof[r] = spec[r * tan + it];
        eng.extend_profile(prof.data(), ReflectionKind::None, dbl.data());
        eng.profile_fft(dbl.data());
        for (std::size_t q = 0; q < m; ++q) dbl[q] *= mt * mult_nu[q];
        eng.profile_ifft(dbl.data());
        eng.restrict_profile(dbl.data(), prof.data(), true);
        for (std::size_t r = 0; r < rows; ++r) spec[r * tan + it] = prof[r];
    }
    eng.tan_inverse(spec.data(), out);
}

template <class FieldT>
FieldT convolve_all(const FieldT& u0, double t, ReflectionKind refl) {
    if (!(t > 0.0)) throw std::domain_error("heat_convolve: t must be positive");
    const HalfSpaceGrid& g = u0.grid();
    FieldT out(g);
    if (g.uniform_normal()) {
        SpectralEngine eng(g);
        for (std::size_t c = 0; c < u0.components(); ++c)
            evolve_component(eng, u0.component(c), out.component(c), t, refl);
    } else {
        for (std::size_t c = 0; c < u0.components(); ++c)
            evolve_component_quadrature(g, u0.component(c), out.component(c), t, refl);
    }
    out.require_finite("heat_convolve");
    return out;
}

}  // namespace

double gauss_kernel(const double* x, int n, double t) {
    if (!(t > 0.0)) throw std::domain_error("gauss_kernel: t must be positive");
    double r2 = 0.0;
    for (int i = 0; i < n; ++i) r2 += x[i] * x[i];
    return std::pow(4.0 * kPi * t, -0.5 * n) * std::exp(-r2 / (4.0 * t));
}

ScalarField heat_convolve(const ScalarField& u0, double t, ReflectionKind refl) {
    return convolve_all(u0, t, refl);
}
VectorField heat_convolve(const VectorField& u0, double t, ReflectionKind refl) {
    return convolve_all(u0, t, refl);
}
SymTensorField heat_convolve(const SymTensorField& u0, double t, ReflectionKind refl) {
    return convolve_all(u0, t, refl);
}

ScalarField heat_convolve_starred(const ScalarField& u0, double t) {
    if (!(t > 0.0)) throw std::domain_error("heat_convolve_starred: t must be positive");
    SpectralEngine eng(u0.grid());
    ScalarField out(u0.grid());
    starred_component(eng, u0.data(), out.data(), t);
    return out;
}

VectorField heat_convolve_starred(const VectorField& u0, double t) {
    if (!(t > 0.0)) throw std::domain_error("heat_convolve_starred: t must be positive");
    SpectralEngine eng(u0.grid());
    VectorField out(u0.grid());
    for (std::size_t c = 0; c < u0.components(); ++c)
        starred_component(eng, u0.component(c), out.component(c), t);
    return out;
}

std::vector<double> heat_decay_profile(const FieldBase& u0, const TimeGrid& times, double p,
                                       double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("heat_decay_profile: alpha must be positive");
    std::vector<double> out(times.size());
    SpectralEngine eng(u0.grid());
    ScalarField tmp(u0.grid());
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double t = times[k];
        if (u0.components() == 1) {
            evolve_component(eng, u0.component(0), tmp.data(), t, ReflectionKind::None);
            out[k] = std::pow(t, 0.5 * alpha) * lp_norm(tmp, p);
        } else {
            VectorField v(u0.grid());
            for (std::size_t c = 0; c < u0.components(); ++c)
                evolve_component(eng, u0.component(c), v.component(c), t, ReflectionKind::None);
            out[k] = std::pow(t, 0.5 * alpha) * lp_norm(v, p);
        }
    }
    return out;
}

}  // namespace nslab
