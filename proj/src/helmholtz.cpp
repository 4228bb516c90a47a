#include "nslab/helmholtz.hpp"

#include <cmath>
#include <vector>

#include "nslab/besov.hpp"
#include "nslab/ops.hpp"
#include "nslab/spectral.hpp"

namespace nslab {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Smooth interior test functions for the weak divergence contract.
double interior_bump(double s) {
    // supported on (0.15, 0.85) in normalized coordinates
    double a = (s - 0.15) / 0.70;
    if (a <= 0.0 || a >= 1.0) return 0.0;
    return std::exp(-1.0 / (a * (1.0 - a)));
}

}  // namespace

ProjectedForcing project_div_form(const SymTensorField& F, bool with_diagnostics) {
    const HalfSpaceGrid& g = F.grid();
    const int n = g.dim();
    const std::size_t rows = g.rows(), tan = g.tan_points();
    SpectralEngine eng(g);
    const std::size_t M = eng.doubled_size();

    ProjectedForcing out(g);

    // input boundary-row check
    double peak = F.max_abs(), wall = 0.0;
    for (std::size_t c = 0; c < F.components(); ++c) {
        const double* row0 = F.component(c);
        for (std::size_t i = 0; i < tan; ++i) wall = std::max(wall, std::fabs(row0[i]));
    }
    out.trace_warning = peak > 0.0 && wall > 1e-8 * peak;

    // tangential spectra of the packed symmetric components
    const std::size_t ncomp = F.components();
    std::vector<std::vector<cplx>> spec(ncomp, std::vector<cplx>(rows * tan));
    for (std::size_t c = 0; c < ncomp; ++c) eng.tan_forward(F.component(c), spec[c].data());

    std::vector<std::vector<cplx>> fspec(std::size_t(n) * n, std::vector<cplx>(rows * tan));

    const auto& xnod = g.normal_nodes();

    std::vector<cplx> prof(rows), z(M), zfft;
    std::vector<std::vector<cplx>> zhat(ncomp, std::vector<cplx>(M));
    std::vector<cplx> shat(M), xhat(M), sprof(rows), xprof(rows);

    for (std::size_t it = 0; it < tan; ++it) {
        const double k = eng.mode_mag(it);
        double xi[2];
        eng.mode_xi(it, xi);

        // doubled zero-extension spectra of every component at this mode
        for (std::size_t c = 0; c < ncomp; ++c) {
            for (std::size_t r = 0; r < rows; ++r) prof[r] = spec[c][r * tan + it];
            eng.extend_profile(prof.data(), ReflectionKind::None, z.data());
            eng.profile_fft(z.data());
            zhat[c] = z;
        }

        auto flip_index = [M](std::size_t q) { return q == 0 ? 0 : M - q; };
        auto mker = [&](std::size_t q) {
            double nu = eng.nu(q);
            double denom = k * k + nu * nu;
            return denom > 0.0 ? -1.0 / denom : 0.0;
        };

        for (int beta = 0; beta < n - 1; ++beta) {
            const std::size_t c_bn = F.pack(std::size_t(beta), std::size_t(n - 1));
            const std::size_t c_nn = F.pack(std::size_t(n - 1), std::size_t(n - 1));

            // S_beta and the beta-row normal column, assembled in spectrum space
            for (std::size_t q = 0; q < M; ++q) {
                const std::size_t qf = flip_index(q);
                const double Mq = mker(q);
                const cplx inu(0.0, eng.nu(q));
                cplx s_acc(0.0, 0.0), x_acc(0.0, 0.0);
                for (int gam = 0; gam < n - 1; ++gam) {
                    const std::size_t c_bg = F.pack(std::size_t(beta), std::size_t(gam));
                    const cplx eplus = Mq * (zhat[c_bg][q] + zhat[c_bg][qf]);
                    s_acc -= cplx(0.0, xi[gam]) * eplus;
                    x_acc -= cplx(0.0, xi[gam]) * inu * eplus;
                }
                const cplx eplus_nn = Mq * (zhat[c_nn][q] + zhat[c_nn][qf]);
                const cplx eminus_bn = Mq * (zhat[c_bn][q] - zhat[c_bn][qf]);
                const cplx dEplus_bn = Mq * inu * (zhat[c_bn][q] - zhat[c_bn][qf]);
                s_acc += -2.0 * dEplus_bn + cplx(0.0, xi[beta]) * eplus_nn;
                x_acc += cplx(0.0, xi[beta]) * inu * eplus_nn - 2.0 * k * k * eminus_bn;
                shat[q] = s_acc;
                xhat[q] = x_acc;
            }
            eng.profile_ifft(shat.data());
            eng.restrict_profile(shat.data(), sprof.data(), false);
            eng.profile_ifft(xhat.data());
            eng.restrict_profile(xhat.data(), xprof.data(), false);

            // surviving wall term of the y_n integration by parts
            if (k > 0.0) {
                const cplx tr = spec[c_bn][it];  // wall row of F_{beta n}
                for (std::size_t r = 0; r < rows; ++r)
                    sprof[r] += 2.0 * tr * std::exp(-k * xnod[r]) / k;
            }

            for (int gam = 0; gam < n - 1; ++gam) {
                const std::size_t c_bg = F.pack(std::size_t(beta), std::size_t(gam));
                auto& dst = fspec[std::size_t(beta) * n + gam];
                const cplx ixg(0.0, xi[gam]);
                for (std::size_t r = 0; r < rows; ++r) {
                    cplx v = spec[c_bg][r * tan + it] + ixg * sprof[r];
                    if (gam == beta) v -= spec[c_nn][r * tan + it];
                    dst[r * tan + it] = v;
                }
            }
            auto& dst_bn = fspec[std::size_t(beta) * n + (n - 1)];
            for (std::size_t r = 0; r < rows; ++r)
                dst_bn[r * tan + it] = xprof[r] - spec[c_bn][r * tan + it];
        }

        // n-th row: F'_{n gamma} = F_{n gamma}, F'_{nn} = 0
        for (int gam = 0; gam < n - 1; ++gam) {
            const std::size_t c_ng = F.pack(std::size_t(n - 1), std::size_t(gam));
            auto& dst = fspec[std::size_t(n - 1) * n + gam];
            for (std::size_t r = 0; r < rows; ++r)
                dst[r * tan + it] = spec[c_ng][r * tan + it];
        }
        auto& dst_nn = fspec[std::size_t(n - 1) * n + (n - 1)];
        for (std::size_t r = 0; r < rows; ++r) dst_nn[r * tan + it] = cplx(0.0, 0.0);
    }

    for (int row = 0; row < n; ++row)
        for (int col = 0; col < n; ++col)
            eng.tan_inverse(fspec[std::size_t(row) * n + col].data(),
                            out.fprime.comp(std::size_t(row), std::size_t(col)));
    out.fprime.require_finite("project_div_form");

    if (with_diagnostics) {
        VectorField pf = projected_divergence(out);
        double pf_norm = lp_norm(pf, 2.0);
        double pf_peak = pf.max_abs();

        // wall flux of (Pf)_n
        double flux = 0.0;
        const double* row0 = pf.component(std::size_t(n - 1));
        for (std::size_t i = 0; i < tan; ++i) flux = std::max(flux, std::fabs(row0[i]));
        out.wall_flux_residual = pf_peak > 0.0 ? flux / pf_peak : 0.0;

        // weak divergence against three interior test functions
        double worst = 0.0;
        const double tan_cell = std::pow(g.tan_spacing(), g.dim() - 1);
        const auto& wn = g.normal_weights();
        for (int mode = 1; mode <= 3; ++mode) {
            ScalarField w(g);
            for (std::size_t r = 0; r < rows; ++r) {
                double b = interior_bump(xnod[r] / g.height());
                for (std::size_t i = 0; i < tan; ++i) {
                    std::size_t i0 = i % g.n_tan();
                    double x1 = double(i0) * g.tan_spacing();
                    w.at(r, i) = b * std::sin(2.0 * kPi * double(mode) * x1 / g.length());
                }
            }
            VectorField gw = gradient(w);
            double dot = 0.0, gnorm2 = 0.0;
            for (std::size_t c = 0; c < gw.components(); ++c)
                for (std::size_t r = 0; r < rows; ++r) {
                    double wrow = wn[r] * tan_cell;
                    const double* a = pf.component(c) + r * tan;
                    const double* b2 = gw.component(c) + r * tan;
                    for (std::size_t i = 0; i < tan; ++i) {
                        dot += wrow * a[i] * b2[i];
                        gnorm2 += wrow * b2[i] * b2[i];
                    }
                }
            double denom = pf_norm * std::sqrt(gnorm2);
            if (denom > 0.0) worst = std::max(worst, std::fabs(dot) / denom);
        }
        out.weak_div_residual = worst;
    }
    return out;
}

VectorField projected_divergence(const ProjectedForcing& pf) {
    const HalfSpaceGrid& g = pf.fprime.grid();
    const int n = g.dim();
    SpectralEngine eng(g);
    NormalDerivative dn(g, 1);
    VectorField out(g);
    std::vector<double> tmp(pf.fprime.component_size());
    for (int col = 0; col < n; ++col) {
        double* dst = out.component(std::size_t(col));
        for (int row = 0; row < n - 1; ++row) {
            eng.tangential_derivative(pf.fprime.comp(std::size_t(row), std::size_t(col)),
                                      tmp.data(), row);
            for (std::size_t i = 0; i < tmp.size(); ++i) dst[i] += tmp[i];
        }
        dn.apply(g, pf.fprime.comp(std::size_t(n - 1), std::size_t(col)), tmp.data());
        for (std::size_t i = 0; i < tmp.size(); ++i) dst[i] += tmp[i];
    }
    return out;
}

double projection_norm_check(const SymTensorField& F, double alpha, double p) {
    if (F.max_abs() == 0.0) return 0.0;
    ProjectedForcing pf = project_div_form(F, false);
    if (alpha == 0.0) return lp_norm(pf.fprime, p) / lp_norm(F, p);
    const auto inf = std::numeric_limits<double>::infinity();
    double num = besov_norm(pf.fprime, {alpha, p, inf}).value;
    double den = besov_norm(F, {alpha, p, inf}).value;
    return num / den;
}

}  // namespace nslab
