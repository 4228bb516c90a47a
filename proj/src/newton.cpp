#include "nslab/newton.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

#include "nslab/spectral.hpp"

namespace nslab {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

double newton_kernel(const double* x, int n) {
    double r2 = 0.0;
    for (int i = 0; i < n; ++i) r2 += x[i] * x[i];
    double r = std::sqrt(r2);
    if (n == 2) return std::log(r) / (2.0 * kPi);
    double omega = 4.0 * kPi;  // surface area of S^2
    return 1.0 / (omega * (2.0 - double(n)) * r);
}

ScalarField newton_volume(const ScalarField& f, PotentialDiagnostics* diag) {
    const HalfSpaceGrid& g = f.grid();
    SpectralEngine eng(g);
    const std::size_t rows = g.rows(), tan = g.tan_points();

    // precondition: data decays before the truncation boundary
    double tail = 0.0, peak = f.max_abs();
    for (std::size_t r = rows - 2; r < rows; ++r)
        for (std::size_t i = 0; i < tan; ++i)
            tail = std::max(tail, std::fabs(f.at(r, i)));
    PotentialDiagnostics d;
    d.tail_magnitude = tail;
    d.decay_ok = tail <= 1e-6 * peak || peak == 0.0;
    if (!d.decay_ok)
        std::cerr << "newton_volume: data does not decay at the truncation boundary (tail "
                  << tail << " vs max " << peak << ")\n";
    if (diag) *diag = d;

    std::vector<cplx> spec(rows * tan);
    eng.tan_forward(f.data(), spec.data());
    const auto& x = g.normal_nodes();

    std::vector<cplx> col(rows), acc_a(rows), acc_b(rows);
    for (std::size_t it = 0; it < tan; ++it) {
        const double k = eng.mode_mag(it);
        for (std::size_t r = 0; r < rows; ++r) col[r] = spec[r * tan + it];
        if (k > 0.0) {
            // causal/anticausal trapezoid recurrences for exp(-k|x-y|)
            acc_a[0] = cplx(0.0, 0.0);
            for (std::size_t r = 1; r < rows; ++r) {
                double dx = x[r] - x[r - 1];
                double e = std::exp(-k * dx);
                acc_a[r] = e * acc_a[r - 1] + 0.5 * dx * (e * col[r - 1] + col[r]);
            }
            acc_b[rows - 1] = cplx(0.0, 0.0);
            for (std::size_t r = rows - 1; r-- > 0;) {
                double dx = x[r + 1] - x[r];
                double e = std::exp(-k * dx);
                acc_b[r] = e * acc_b[r + 1] + 0.5 * dx * (e * col[r + 1] + col[r]);
            }
            for (std::size_t r = 0; r < rows; ++r)
                spec[r * tan + it] = -(acc_a[r] + acc_b[r]) / (2.0 * k);
        } else {
            // w(x) = int_x^H (z - x) f(z) dz, suffix trapezoid sums
            cplx s1{0.0, 0.0}, s2{0.0, 0.0};
            acc_a[rows - 1] = cplx(0.0, 0.0);
            for (std::size_t r = rows - 1; r-- > 0;) {
                double dx = x[r + 1] - x[r];
                s1 += 0.5 * dx * (col[r + 1] + col[r]);
                s2 += 0.5 * dx * (x[r + 1] * col[r + 1] + x[r] * col[r]);
                acc_a[r] = s2 - x[r] * s1;
            }
            for (std::size_t r = 0; r < rows; ++r) spec[r * tan + it] = acc_a[r];
        }
    }
    ScalarField out(g);
    eng.tan_inverse(spec.data(), out.data());
    out.require_finite("newton_volume");
    return out;
}

ScalarField poisson_boundary(const BoundaryField& gdata, PoissonProfile profile) {
    const HalfSpaceGrid& g = gdata.grid();
    SpectralEngine eng(g);
    const std::size_t rows = g.rows(), tan = g.tan_points();
    const std::size_t nt = g.n_tan();
    const int naxes = g.dim() - 1;

    // tangential DFT of the wall data
    std::vector<cplx> ghat(tan);
    for (std::size_t i = 0; i < tan; ++i) ghat[i] = cplx(gdata[i], 0.0);
    auto plan = fft_plan(nt);
    for (std::size_t off = 0; off < tan; off += nt) plan->forward(ghat.data() + off);
    if (naxes == 2) {
        std::vector<cplx> line(nt);
        for (std::size_t i0 = 0; i0 < nt; ++i0) {
            for (std::size_t i1 = 0; i1 < nt; ++i1) line[i1] = ghat[i0 + nt * i1];
            plan->forward(line.data());
            for (std::size_t i1 = 0; i1 < nt; ++i1) ghat[i0 + nt * i1] = line[i1];
        }
    }

    const auto& x = g.normal_nodes();
    std::vector<cplx> spec(rows * tan);
    for (std::size_t it = 0; it < tan; ++it) {
        const double k = eng.mode_mag(it);
        for (std::size_t r = 0; r < rows; ++r) {
            double sym;
            if (k > 0.0) {
                double e = std::exp(-k * x[r]);
                switch (profile) {
                    case PoissonProfile::Potential: sym = -e / (2.0 * k); break;
                    case PoissonProfile::NormalDerivative: sym = -0.5 * e; break;
                    default: sym = e; break;
                }
            } else {
                switch (profile) {
                    case PoissonProfile::Potential: sym = 0.0; break;
                    case PoissonProfile::NormalDerivative: sym = -0.5; break;
                    default: sym = 1.0; break;
                }
            }
            spec[r * tan + it] = sym * ghat[it];
        }
    }
    ScalarField out(g);
    eng.tan_inverse(spec.data(), out.data());
    out.require_finite("poisson_boundary");
    return out;
}

ScalarField riesz_tangential(const ScalarField& f, int axis) {
    const HalfSpaceGrid& g = f.grid();
    if (axis < 0 || axis >= g.dim() - 1)
        throw std::invalid_argument("riesz_tangential: axis out of range");
    SpectralEngine eng(g);
    const std::size_t rows = g.rows(), tan = g.tan_points();
    std::vector<cplx> spec(rows * tan);
    eng.tan_forward(f.data(), spec.data());
    for (std::size_t r = 0; r < rows; ++r) {
        cplx* row = spec.data() + r * tan;
        for (std::size_t i = 0; i < tan; ++i) {
            double mag = eng.mode_mag(i);
            double xi[2];
            eng.mode_xi(i, xi);
            row[i] *= mag > 0.0 ? cplx(0.0, xi[axis] / mag) : cplx(0.0, 0.0);
        }
    }
    ScalarField out(g);
    eng.tan_inverse(spec.data(), out.data());
    return out;
}

BoundaryField riesz_tangential(const BoundaryField& f, int axis) {
    // reuse the scalar path on a single wall row: cheap and keeps one code path
    const HalfSpaceGrid& g = f.grid();
    ScalarField lift(g);
    for (std::size_t i = 0; i < g.tan_points(); ++i) lift.at(0, i) = f[i];
    ScalarField r = riesz_tangential(lift, axis);
    BoundaryField out(g);
    for (std::size_t i = 0; i < g.tan_points(); ++i) out[i] = r.at(0, i);
    return out;
}

}  // namespace nslab
