#include "nslab/stokes.hpp"

#include <cmath>
#include <stdexcept>

#include "nslab/ops.hpp"
#include "nslab/parallel.hpp"
#include "nslab/spectral.hpp"

namespace nslab {

namespace {

struct ModeWork {
    std::vector<cplx> prof, dbl, P;
    std::vector<std::vector<cplx>> zhat;
    ModeWork(std::size_t rows, std::size_t M, std::size_t ncomp)
        : prof(rows), dbl(M), P(M), zhat(ncomp, std::vector<cplx>(M)) {}
};

inline std::size_t flip_index(std::size_t q, std::size_t M) { return q == 0 ? 0 : M - q; }

}  // namespace

MatrixField ForcingProvider::fprime(double tau) const {
    SymTensorField F = raw(tau);
    return project_div_form(F, false).fprime;
}

VectorField green_tensor_apply(const VectorField& u0, double t) {
    if (!(t > 0.0)) throw std::domain_error("green_tensor_apply: t must be positive");
    const HalfSpaceGrid& g = u0.grid();
    const int n = g.dim();
    SpectralEngine eng(g);
    const std::size_t rows = g.rows(), tan = g.tan_points(), M = eng.doubled_size();
    const auto& xnod = g.normal_nodes();

    std::vector<std::vector<cplx>> spec(n, std::vector<cplx>(rows * tan));
    for (int c = 0; c < n; ++c) eng.tan_forward(u0.component(c), spec[c].data());

    std::vector<double> mult_nu(M);
    for (std::size_t q = 0; q < M; ++q) mult_nu[q] = std::exp(-t * eng.nu(q) * eng.nu(q));

    ModeWork w(rows, M, std::size_t(n));
    std::vector<cplx> vout(rows);

    for (std::size_t it = 0; it < tan; ++it) {
        const double k = eng.mode_mag(it);
        const double mt = std::exp(-t * k * k);
        double xi[2];
        eng.mode_xi(it, xi);

        for (int c = 0; c < n; ++c) {
            for (std::size_t r = 0; r < rows; ++r) w.prof[r] = spec[c][r * tan + it];
            eng.extend_profile(w.prof.data(), ReflectionKind::None, w.dbl.data());
            eng.profile_fft(w.dbl.data());
            for (std::size_t q = 0; q < M; ++q) w.dbl[q] *= mt * mult_nu[q];
            w.zhat[std::size_t(c)] = w.dbl;
        }

        // correction ingredient: one cumulative integral per mode
        std::vector<cplx> irow(rows, cplx(0.0, 0.0));
        if (k > 0.0) {
            for (std::size_t q = 0; q < M; ++q) {
                cplx wsum(0.0, 0.0);
                for (int j = 0; j < n - 1; ++j)
                    wsum += cplx(0.0, xi[j]) * w.zhat[std::size_t(j)][flip_index(q, M)];
                w.P[q] = wsum / cplx(k, eng.nu(q));
            }
            eng.profile_ifft(w.P.data());
            const cplx P0 = w.P[eng.upper_index(0)];
            for (std::size_t r = 0; r < rows; ++r) {
                std::size_t m = eng.upper_index(r);
                irow[r] = w.P[m] - std::exp(-k * xnod[r]) * P0;
            }
        }

        for (int c = 0; c < n; ++c) {
            // odd image part
            for (std::size_t q = 0; q < M; ++q)
                w.dbl[q] = w.zhat[std::size_t(c)][q] - w.zhat[std::size_t(c)][flip_index(q, M)];
            eng.profile_ifft(w.dbl.data());
            eng.restrict_profile(w.dbl.data(), vout.data(), false);
            if (k > 0.0) {
                if (c < n - 1) {
                    const cplx coef = cplx(0.0, -2.0 * xi[c] / k);
                    for (std::size_t r = 0; r < rows; ++r) vout[r] += coef * irow[r];
                } else {
                    for (std::size_t r = 0; r < rows; ++r) vout[r] += 2.0 * irow[r];
                }
            }
            for (std::size_t r = 0; r < rows; ++r) spec[std::size_t(c)][r * tan + it] = vout[r];
        }
    }

    VectorField out(g);
    for (int c = 0; c < n; ++c) eng.tan_inverse(spec[std::size_t(c)].data(), out.component(c));
    out.require_finite("green_tensor_apply");
    return out;
}

ScalarField stokes_pressure(const VectorField& u0, double t) {
    if (!(t > 0.0)) throw std::domain_error("stokes_pressure: t must be positive");
    const HalfSpaceGrid& g = u0.grid();
    const int n = g.dim();
    SpectralEngine eng(g);
    const std::size_t rows = g.rows(), tan = g.tan_points(), M = eng.doubled_size();
    const auto& xnod = g.normal_nodes();

    std::vector<std::vector<cplx>> spec(n, std::vector<cplx>(rows * tan));
    for (int c = 0; c < n; ++c) eng.tan_forward(u0.component(c), spec[c].data());

    std::vector<double> mult_nu(M);
    for (std::size_t q = 0; q < M; ++q) mult_nu[q] = std::exp(-t * eng.nu(q) * eng.nu(q));

    std::vector<cplx> prof(rows), dbl(M), der(M);
    std::vector<cplx> pr(rows * tan, cplx(0.0, 0.0));
    for (std::size_t it = 0; it < tan; ++it) {
        const double k = eng.mode_mag(it);
        if (k == 0.0) continue;
        const double mt = std::exp(-t * k * k);
        double xi[2];
        eng.mode_xi(it, xi);
        cplx acc(0.0, 0.0);
        for (int j = 0; j < n - 1; ++j) {
            for (std::size_t r = 0; r < rows; ++r) prof[r] = spec[std::size_t(j)][r * tan + it];
            eng.extend_profile(prof.data(), ReflectionKind::None, dbl.data());
            eng.profile_fft(dbl.data());
            for (std::size_t q = 0; q < M; ++q) dbl[q] *= mt * mult_nu[q];
            for (std::size_t q = 0; q < M; ++q) der[q] = cplx(0.0, eng.nu(q)) * dbl[q];
            eng.profile_ifft(dbl.data());
            eng.profile_ifft(der.data());
            const cplx h = dbl[eng.upper_index(0)];       // wall value of the evolution
            const cplx m = -der[eng.upper_index(0)];      // wall value of the starred flux
            acc += cplx(0.0, xi[j]) * (0.5 * h - m / (2.0 * k));
        }
        for (std::size_t r = 0; r < rows; ++r)
            pr[r * tan + it] = 4.0 * acc * std::exp(-k * xnod[r]);
    }
    ScalarField out(g);
    eng.tan_inverse(pr.data(), out.data());
    out.require_finite("stokes_pressure");
    return out;
}

VectorField green_divform_apply(const MatrixField& fprime, double s) {
    if (!(s > 0.0)) throw std::domain_error("green_divform_apply: t - tau must be positive");
    const HalfSpaceGrid& g = fprime.grid();
    const int n = g.dim();
    SpectralEngine eng(g);
    const std::size_t rows = g.rows(), tan = g.tan_points(), M = eng.doubled_size();
    const auto& xnod = g.normal_nodes();

    const std::size_t nc = std::size_t(n) * n;
    std::vector<std::vector<cplx>> spec(nc, std::vector<cplx>(rows * tan));
    for (std::size_t c = 0; c < nc; ++c) eng.tan_forward(fprime.component(c), spec[c].data());
    std::vector<std::vector<cplx>> vspec(n, std::vector<cplx>(rows * tan));

    std::vector<double> mult_nu(M);
    for (std::size_t q = 0; q < M; ++q) mult_nu[q] = std::exp(-s * eng.nu(q) * eng.nu(q));

    ModeWork w(rows, M, nc);
    std::vector<cplx> jspec(M), vout(rows);

    for (std::size_t it = 0; it < tan; ++it) {
        const double k = eng.mode_mag(it);
        const double mt = std::exp(-s * k * k);
        double xi[2];
        eng.mode_xi(it, xi);

        for (std::size_t c = 0; c < nc; ++c) {
            for (std::size_t r = 0; r < rows; ++r) w.prof[r] = spec[c][r * tan + it];
            eng.extend_profile(w.prof.data(), ReflectionKind::None, w.dbl.data());
            eng.profile_fft(w.dbl.data());
            for (std::size_t q = 0; q < M; ++q) w.dbl[q] *= mt * mult_nu[q];
            w.zhat[c] = w.dbl;
        }
        auto zc = [&](int row, int col) -> const std::vector<cplx>& {
            return w.zhat[std::size_t(row) * n + std::size_t(col)];
        };

        // cumulative-correction ingredient from the starred divergence
        std::vector<cplx> irow(rows, cplx(0.0, 0.0));
        if (k > 0.0) {
            for (std::size_t q = 0; q < M; ++q) {
                const std::size_t qf = flip_index(q, M);
                const cplx inu(0.0, eng.nu(q));
                cplx wsum(0.0, 0.0);
                for (int j = 0; j < n - 1; ++j) {
                    cplx wj(0.0, 0.0);
                    for (int m = 0; m < n - 1; ++m)
                        wj += cplx(0.0, xi[m]) * zc(m, j)[qf];
                    wj -= inu * zc(n - 1, j)[qf];
                    wsum += cplx(0.0, xi[j]) * wj;
                }
                w.P[q] = wsum / cplx(k, eng.nu(q));
            }
            eng.profile_ifft(w.P.data());
            const cplx P0 = w.P[eng.upper_index(0)];
            for (std::size_t r = 0; r < rows; ++r)
                irow[r] = w.P[eng.upper_index(r)] - std::exp(-k * xnod[r]) * P0;
        }

        for (int i = 0; i < n; ++i) {
            for (std::size_t q = 0; q < M; ++q) {
                const std::size_t qf = flip_index(q, M);
                const cplx inu(0.0, eng.nu(q));
                cplx acc(0.0, 0.0);
                for (int m = 0; m < n - 1; ++m)
                    acc += cplx(0.0, xi[m]) * (zc(m, i)[q] - zc(m, i)[qf]);
                acc += inu * (zc(n - 1, i)[q] + zc(n - 1, i)[qf]);
                jspec[q] = acc;
            }
            eng.profile_ifft(jspec.data());
            eng.restrict_profile(jspec.data(), vout.data(), false);
            if (k > 0.0) {
                if (i < n - 1) {
                    const cplx coef = cplx(0.0, -2.0 * xi[i] / k);
                    for (std::size_t r = 0; r < rows; ++r) vout[r] += coef * irow[r];
                } else {
                    for (std::size_t r = 0; r < rows; ++r) vout[r] += 2.0 * irow[r];
                }
            }
            for (std::size_t r = 0; r < rows; ++r) vspec[std::size_t(i)][r * tan + it] = vout[r];
        }
    }

    VectorField out(g);
    for (int i = 0; i < n; ++i) eng.tan_inverse(vspec[std::size_t(i)].data(), out.component(i));
    out.require_finite("green_divform_apply");
    return out;
}

VectorField duhamel_apply(const ForcingProvider& forcing, double t, const GradedRule& rule) {
    if (rule.panels < 3) throw std::invalid_argument("duhamel_apply: quadrature node count < 8");
    if (!(rule.ratio > 0.0 && rule.ratio < 1.0))
        throw std::invalid_argument("duhamel_apply: ratio must lie in (0, 1)");

    // breakpoints cluster at tau = t; panel count scales the exponent grid
    std::vector<double> breaks;
    breaks.reserve(rule.panels + 2);
    for (std::size_t q = 0; q <= rule.panels; ++q) {
        double e = double(q) * 24.0 / double(rule.panels);
        breaks.push_back(t * (1.0 - std::pow(rule.ratio, e)));
    }
    breaks.push_back(t);

    const double gauss_off = 0.5 / std::sqrt(3.0);
    VectorField acc(forcing.grid());
    for (std::size_t q = 0; q + 1 < breaks.size(); ++q) {
        const double a = breaks[q], b = breaks[q + 1];
        const double len = b - a;
        if (!(len > 0.0)) continue;
        for (int gpt = 0; gpt < 2; ++gpt) {
            const double tau = 0.5 * (a + b) + (gpt == 0 ? -1.0 : 1.0) * gauss_off * len;
            MatrixField fp = forcing.fprime(tau);
            VectorField contrib = green_divform_apply(fp, t - tau);
            acc.axpy(0.5 * len, contrib);
        }
    }
    acc.require_finite("duhamel_apply");
    return acc;
}

void check_stokes_data(const VectorField& u0) {
    const HalfSpaceGrid& g = u0.grid();
    const double norm2 = lp_norm(u0, 2.0);
    if (norm2 == 0.0) return;
    // divergence measured against the gradient scale (max tangential frequency)
    const double xi_max = 3.14159265358979323846 * double(g.n_tan()) / g.length();
    ScalarField div = divergence(u0);
    if (lp_norm(div, 2.0) > 1e-8 * xi_max * norm2)
        throw std::invalid_argument("StokesProblem: initial data is not discretely solenoidal");
    if (linf_boundary(boundary_trace(u0)) > 1e-8 * u0.max_abs())
        throw std::invalid_argument("StokesProblem: initial data has a nonzero wall trace");
}

TimeDiagnostics stokes_diagnostics(const VectorField& u) {
    TimeDiagnostics d;
    const double peak = u.max_abs();
    d.trace_rel = peak > 0.0 ? linf_boundary(boundary_trace(u)) / peak : 0.0;
    ScalarField div = divergence(u);
    double grad2 = 0.0;
    for (std::size_t c = 0; c < u.components(); ++c) {
        ScalarField comp = scalar_component(u, c);
        VectorField gc = gradient(comp);
        double v = lp_norm(gc, 2.0);
        grad2 += v * v;
    }
    const double gnorm = std::sqrt(grad2);
    d.div_rel = gnorm > 0.0 ? lp_norm(div, 2.0) / gnorm : 0.0;
    return d;
}

StokesSolution solve_homogeneous(const StokesProblem& prob, bool with_pressure) {
    check_stokes_data(prob.u0);
    StokesSolution sol(prob.u0.grid(), prob.times);
    sol.diagnostics.resize(prob.times.size());
    if (with_pressure) sol.pressure.assign(prob.times.size(), ScalarField(prob.u0.grid()));
    parallel_for(prob.times.size(), [&](std::size_t k) {
        sol.velocity[k] = green_tensor_apply(prob.u0, prob.times[k]);
        sol.diagnostics[k] = stokes_diagnostics(sol.velocity[k]);
        if (with_pressure) sol.pressure[k] = stokes_pressure(prob.u0, prob.times[k]);
    });
    return sol;
}

StokesSolution solve_stokes(const StokesProblem& prob, const GradedRule& rule) {
    check_stokes_data(prob.u0);
    StokesSolution sol(prob.u0.grid(), prob.times);
    sol.diagnostics.resize(prob.times.size());
    parallel_for(prob.times.size(), [&](std::size_t k) {
        sol.velocity[k] = green_tensor_apply(prob.u0, prob.times[k]);
        if (prob.forcing) {
            VectorField v = duhamel_apply(*prob.forcing, prob.times[k], rule);
            sol.velocity[k].axpy(1.0, v);
        }
        sol.diagnostics[k] = stokes_diagnostics(sol.velocity[k]);
    });
    return sol;
}

}  // namespace nslab
