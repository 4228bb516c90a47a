#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "nslab/heat.hpp"
#include "nslab/newton.hpp"
#include "nslab/ops.hpp"
#include "nslab/rng.hpp"
#include "nslab/scenario.hpp"
#include "nslab/spectral.hpp"

using namespace nslab;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

double tensor_trapezoid_mass(int n, double t, int pts) {
    // integral of the kernel over [-8 sqrt(t), 8 sqrt(t)]^n
    double half = 10.0 * std::sqrt(t);
    double h = 2.0 * half / double(pts);
    double acc = 0.0;
    std::vector<double> x(static_cast<std::size_t>(n), 0.0);
    if (n == 2) {
        for (int i = 0; i <= pts; ++i)
            for (int j = 0; j <= pts; ++j) {
                x[0] = -half + i * h;
                x[1] = -half + j * h;
                double w = ((i == 0 || i == pts) ? 0.5 : 1.0) * ((j == 0 || j == pts) ? 0.5 : 1.0);
                acc += w * gauss_kernel(x.data(), 2, t);
            }
        return acc * h * h;
    }
    for (int i = 0; i <= pts; ++i)
        for (int j = 0; j <= pts; ++j)
            for (int k = 0; k <= pts; ++k) {
                x[0] = -half + i * h;
                x[1] = -half + j * h;
                x[2] = -half + k * h;
                double w = ((i == 0 || i == pts) ? 0.5 : 1.0) * ((j == 0 || j == pts) ? 0.5 : 1.0) *
                           ((k == 0 || k == pts) ? 0.5 : 1.0);
                acc += w * gauss_kernel(x.data(), 3, t);
            }
    return acc * h * h * h;
}

ScalarField smooth_sample(const HalfSpaceGrid& g, std::uint64_t seed) {
    Rng rng(seed);
    ScalarField f(g);
    const auto& xn = g.normal_nodes();
    for (int mode = 1; mode <= 3; ++mode) {
        double a = rng.gaussian(), ph = rng.uniform(0.0, 2.0 * kPi);
        double c = rng.uniform(1.5, 3.5), w = rng.uniform(0.7, 1.2);
        for (std::size_t r = 0; r < g.rows(); ++r)
            for (std::size_t i = 0; i < g.tan_points(); ++i) {
                double x1 = double(i % g.n_tan()) * g.tan_spacing();
                f.at(r, i) += a * std::sin(2.0 * kPi * mode * x1 / g.length() + ph) *
                              std::exp(-((xn[r] - c) / w) * ((xn[r] - c) / w));
            }
    }
    return f;
}

}  // namespace

TEST_CASE("gauss kernel point value and error paths") {
    double x0[3] = {0.0, 0.0, 0.0};
    // (4 pi)^{-3/2} = 0.0224485...
    CHECK(gauss_kernel(x0, 3, 1.0) == doctest::Approx(std::pow(4.0 * kPi, -1.5)).epsilon(1e-12));
    CHECK(gauss_kernel(x0, 3, 1.0) == doctest::Approx(0.0224485).epsilon(1e-4));
    CHECK_THROWS_AS(gauss_kernel(x0, 3, 0.0), std::domain_error);
    CHECK_THROWS_AS(gauss_kernel(x0, 2, -1.0), std::domain_error);
}

TEST_CASE("gauss kernel has unit mass under quadrature") {
    for (double t : {0.5, 1.0, 2.0}) {
        CHECK(std::fabs(tensor_trapezoid_mass(2, t, 400) - 1.0) < 1e-10);
        CHECK(std::fabs(tensor_trapezoid_mass(3, t, 220) - 1.0) < 1e-10);
    }
}

TEST_CASE("gauss kernel composes under convolution (quadrature oracle)") {
    const double s = 0.3, t = 0.5;
    const double half = 8.0 * std::sqrt(std::max(s, t)) + 2.0;
    const int pts = 360;
    const double h = 2.0 * half / double(pts);
    for (double xp : {0.0, 0.7, 1.9}) {
        double acc = 0.0;
        for (int i = 0; i <= pts; ++i)
            for (int j = 0; j <= pts; ++j) {
                double y[2] = {-half + i * h, -half + j * h};
                double d[2] = {xp - y[0], 0.4 - y[1]};
                double w = ((i == 0 || i == pts) ? 0.5 : 1.0) * ((j == 0 || j == pts) ? 0.5 : 1.0);
                acc += w * gauss_kernel(d, 2, s) * gauss_kernel(y, 2, t);
            }
        acc *= h * h;
        double ref[2] = {xp, 0.4};
        CHECK(std::fabs(acc - gauss_kernel(ref, 2, s + t)) < 1e-9);
    }
}

TEST_CASE("heat_convolve: zero data, odd trace, semigroup, mass") {
    HalfSpaceGrid g(2, 64, 48, 2.0 * kPi, 2.0 * kPi);
    ScalarField zero(g);
    CHECK(heat_convolve(zero, 0.3, ReflectionKind::None).max_abs() == 0.0);
    CHECK_THROWS_AS(heat_convolve(zero, 0.0, ReflectionKind::None), std::domain_error);

    ScalarField f = smooth_sample(g, 11);
    for (double t : {1e-3, 0.1, 1.0}) {
        ScalarField odd = heat_convolve(f, t, ReflectionKind::Odd);
        BoundaryField tr = boundary_trace(odd);
        double worst = 0.0;
        for (std::size_t i = 0; i < tr.size(); ++i) worst = std::max(worst, std::fabs(tr[i]));
        CHECK(worst <= 1e-10 * f.max_abs());
    }

    for (auto refl : {ReflectionKind::Odd, ReflectionKind::Even}) {
        ScalarField two = heat_convolve(heat_convolve(f, 0.07, refl), 0.11, refl);
        ScalarField one = heat_convolve(f, 0.18, refl);
        two.axpy(-1.0, one);
        CHECK(two.max_abs() <= 1e-8 * f.max_abs());
    }

    ScalarField ev = heat_convolve(f, 0.05, ReflectionKind::None);
    double m0 = 0.0, m1 = 0.0;
    const auto& w = g.normal_weights();
    for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t i = 0; i < g.tan_points(); ++i) {
            m0 += w[r] * f.at(r, i);
            m1 += w[r] * ev.at(r, i);
        }
    CHECK(std::fabs(m1 - m0) <= 1e-6 * (std::fabs(m0) + f.max_abs()));
}

TEST_CASE("heat_convolve reproduces the widened-Gaussian closed form") {
    HalfSpaceGrid g(2, 128, 96, 2.0 * kPi, 2.0 * kPi);
    const double A = 1.3, sig = 0.45, c1 = kPi, cn = kPi, t = 0.05;
    ScalarField f(g);
    const auto& xn = g.normal_nodes();
    for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t i = 0; i < g.tan_points(); ++i) {
            double x1 = double(i) * g.tan_spacing();
            for (int m = -1; m <= 1; ++m) {
                double dx = x1 - c1 - 2.0 * kPi * m;
                double dn = xn[r] - cn;
                f.at(r, i) += A * std::exp(-(dx * dx + dn * dn) / (2.0 * sig * sig));
            }
        }
    ScalarField ev = heat_convolve(f, t, ReflectionKind::None);
    const double s2 = sig * sig + 2.0 * t;
    double err = 0.0;
    for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t i = 0; i < g.tan_points(); ++i) {
            double x1 = double(i) * g.tan_spacing();
            double ref = 0.0;
            for (int m1 = -1; m1 <= 1; ++m1)
                for (int m2 = -1; m2 <= 1; ++m2) {
                    double dx = x1 - c1 - 2.0 * kPi * m1;
                    double dn = xn[r] - cn - 4.0 * kPi * m2;
                    ref += A * (sig * sig / s2) * std::exp(-(dx * dx + dn * dn) / (2.0 * s2));
                }
            err = std::max(err, std::fabs(ev.at(r, i) - ref));
        }
    CHECK(err <= 1e-8 * A);
}

TEST_CASE("newton kernel value in three dimensions") {
    double x[3] = {1.0, 0.0, 0.0};
    CHECK(newton_kernel(x, 3) == doctest::Approx(-1.0 / (4.0 * kPi)).epsilon(1e-12));
    CHECK(newton_kernel(x, 3) == doctest::Approx(-0.0795775).epsilon(1e-4));
}

TEST_CASE("newton_volume: zero data, defining property under refinement") {
    HalfSpaceGrid g0(2, 64, 48, 2.0 * kPi, 2.0 * kPi);
    ScalarField zero(g0);
    CHECK(newton_volume(zero).max_abs() == 0.0);

    double prev = 0.0;
    for (std::size_t n : {48u, 96u}) {
        HalfSpaceGrid g(2, n == 48 ? 64 : 128, n, 2.0 * kPi, 2.0 * kPi);
        ScalarField f(g);
        const auto& xn = g.normal_nodes();
        for (std::size_t r = 0; r < g.rows(); ++r)
            for (std::size_t i = 0; i < g.tan_points(); ++i) {
                double x1 = double(i) * g.tan_spacing();
                f.at(r, i) = std::sin(2.0 * x1) *
                             std::exp(-((xn[r] - kPi) / 0.7) * ((xn[r] - kPi) / 0.7));
            }
        PotentialDiagnostics diag;
        ScalarField w = newton_volume(f, &diag);
        CHECK(diag.decay_ok);
        ScalarField lap = laplacian(w);
        lap.axpy(-1.0, f);
        double err = 0.0;
        for (std::size_t r = 4; r + 4 < g.rows(); ++r)
            for (std::size_t i = 0; i < g.tan_points(); ++i)
                err = std::max(err, std::fabs(lap.at(r, i)));
        if (prev > 0.0) CHECK(err < prev / 3.0);  // second order gives /4
        prev = err;
    }
}

TEST_CASE("poisson_boundary: locked symbols, harmonic extension, zero modes") {
    HalfSpaceGrid g(2, 64, 64, 2.0 * kPi, 2.0 * kPi);
    BoundaryField bd(g);
    for (std::size_t i = 0; i < g.tan_points(); ++i)
        bd[i] = std::sin(double(i) * g.tan_spacing());

    ScalarField harm = poisson_boundary(bd, PoissonProfile::Harmonic);
    const auto& xn = g.normal_nodes();
    double err = 0.0;
    for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t i = 0; i < g.tan_points(); ++i) {
            double x1 = double(i) * g.tan_spacing();
            err = std::max(err, std::fabs(harm.at(r, i) - std::sin(x1) * std::exp(-xn[r])));
        }
    CHECK(err <= 1e-10);

    ScalarField lap = laplacian(harm);
    double lerr = 0.0;
    for (std::size_t r = 4; r + 4 < g.rows(); ++r)
        for (std::size_t i = 0; i < g.tan_points(); ++i)
            lerr = std::max(lerr, std::fabs(lap.at(r, i)));
    CHECK(lerr <= 2e-5);

    ScalarField pot = poisson_boundary(bd, PoissonProfile::Potential);
    ScalarField dn = poisson_boundary(bd, PoissonProfile::NormalDerivative);
    for (std::size_t i = 0; i < g.tan_points(); i += 7) {
        double gv = bd[i];
        CHECK(pot.at(0, i) == doctest::Approx(-0.5 * gv).epsilon(1e-10));
        CHECK(dn.at(0, i) == doctest::Approx(-0.5 * gv).epsilon(1e-10));
    }

    BoundaryField ones(g);
    for (std::size_t i = 0; i < g.tan_points(); ++i) ones[i] = 1.0;
    CHECK(poisson_boundary(ones, PoissonProfile::Potential).max_abs() <= 1e-13);
    CHECK(poisson_boundary(ones, PoissonProfile::NormalDerivative).at(3, 5) ==
          doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(poisson_boundary(ones, PoissonProfile::Harmonic).at(3, 5) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("riesz transform: unit modulus and the wall-operator identity") {
    HalfSpaceGrid g(2, 64, 48, 2.0 * kPi, 2.0 * kPi);
    ScalarField f(g);
    for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t i = 0; i < g.tan_points(); ++i)
            f.at(r, i) = std::cos(2.0 * double(i) * g.tan_spacing());
    ScalarField rf = riesz_tangential(f, 0);
    CHECK(lp_norm(rf, 2.0) == doctest::Approx(lp_norm(f, 2.0)).epsilon(1e-12));
    double err = 0.0;
    for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t i = 0; i < g.tan_points(); ++i)
            err = std::max(err, std::fabs(rf.at(r, i) +
                                          std::sin(2.0 * double(i) * g.tan_spacing())));
    CHECK(err <= 1e-11);

    BoundaryField bd(g);
    for (std::size_t i = 0; i < g.tan_points(); ++i)
        bd[i] = std::sin(double(i % g.n_tan()) * g.tan_spacing() + 0.3) +
                0.5 * std::cos(3.0 * double(i % g.n_tan()) * g.tan_spacing());
    SpectralEngine eng(g);
    ScalarField lhs(g);
    {
        ScalarField pot = poisson_boundary(bd, PoissonProfile::Potential);
        eng.tangential_derivative(pot.data(), lhs.data(), 0);
    }
    ScalarField rhs = poisson_boundary(riesz_tangential(bd, 0), PoissonProfile::NormalDerivative);
    rhs.axpy(-1.0, lhs);
    CHECK(rhs.max_abs() <= 1e-8 * std::max(1.0, lhs.max_abs()));
}

TEST_CASE("riesz zero data maps to zero") {
    HalfSpaceGrid g(2, 16, 12, 2.0 * kPi, 2.0 * kPi);
    ScalarField zero(g);
    CHECK(riesz_tangential(zero, 0).max_abs() == 0.0);
}

TEST_CASE("heat_decay_profile: zeros and single-band sup scaling") {
    HalfSpaceGrid g(2, 64, 48, 2.0 * kPi, 2.0 * kPi);
    TimeGrid times(1e-4, std::pow(2.0, 0.5), 30);
    ScalarField zero(g);
    auto prof0 = heat_decay_profile(zero, times, 2.0, 1.0);
    for (double v : prof0) CHECK(v == 0.0);

    const double alpha = 1.0, p = 2.0;
    std::vector<double> sups;
    for (int j : {2, 3}) {
        ScalarField band = scalar_band_sample(g, j, 5);
        double bnorm = lp_norm(band, p);
        auto prof = heat_decay_profile(band, times, p, alpha);
        double sup = 0.0;
        for (double v : prof) sup = std::max(sup, v);
        sups.push_back(sup / (std::pow(2.0, -double(j) * alpha) * bnorm));
    }
    CHECK(std::fabs(sups[0] - sups[1]) <= 0.10 * std::max(sups[0], sups[1]));
}

TEST_CASE("second-derivative bound of the volume potential is refinement-stable") {
    // ensemble ratio ||grad^2 newton_volume(f)||_p / ||f||_p with one fitted
    // constant per p, stable across normal refinement
    for (double p : {2.0, 4.0}) {
        std::vector<double> cfit;
        for (std::size_t nn : {96u, 144u}) {
            HalfSpaceGrid g(2, 64, nn, 2.0 * kPi, 2.0 * kPi);
            NormalDerivative d1(g, 1), d2(g, 2);
            SpectralEngine eng(g);
            double worst = 0.0;
            for (std::uint64_t s = 0; s < 20; ++s) {
                ScalarField f = scalar_band_sample(g, 1 + int(s % 3), 700 + s);
                ScalarField w = newton_volume(f);
                // Hessian entries: spectral tangential, FD normal
                ScalarField h11(g), h12(g), h22(g);
                eng.tangential_derivative(w.data(), h11.data(), 0);
                {
                    ScalarField tmp = h11;
                    eng.tangential_derivative(tmp.data(), h11.data(), 0);
                    d1.apply(g, tmp.data(), h12.data());
                }
                d2.apply(g, w.data(), h22.data());
                VectorField hess(g);
                std::copy(h11.data(), h11.data() + h11.size(), hess.component(0));
                std::copy(h22.data(), h22.data() + h22.size(), hess.component(1));
                double num = std::sqrt(std::pow(lp_norm(hess, p), 2.0) +
                                       2.0 * std::pow(lp_norm(h12, p), 2.0));
                worst = std::max(worst, num / lp_norm(f, p));
            }
            cfit.push_back(worst);
        }
        CHECK(std::isfinite(cfit[0]));
        CHECK(std::fabs(cfit[1] - cfit[0]) <= 0.20 * cfit[0]);
    }
}

TEST_CASE("gradient bound of the wall potential is refinement-stable") {
    std::vector<double> cfit;
    for (std::size_t nn : {96u, 144u}) {
        HalfSpaceGrid g(2, 64, nn, 2.0 * kPi, 2.0 * kPi);
        double worst = 0.0;
        for (int mode = 1; mode <= 6; ++mode) {
            BoundaryField bd(g);
            for (std::size_t i = 0; i < g.tan_points(); ++i)
                bd[i] = std::sin(mode * double(i) * g.tan_spacing() + 0.3 * mode);
            ScalarField nf = poisson_boundary(bd, PoissonProfile::Potential);
            VectorField gnf = gradient(nf);
            double gnorm = 0.0;
            for (std::size_t i = 0; i < bd.size(); ++i) gnorm += bd[i] * bd[i];
            gnorm = std::sqrt(gnorm * std::pow(g.tan_spacing(), g.dim() - 1));
            worst = std::max(worst, lp_norm(gnf, 2.0) / gnorm);
        }
        cfit.push_back(worst);
    }
    CHECK(std::isfinite(cfit[0]));
    CHECK(std::fabs(cfit[1] - cfit[0]) <= 0.20 * cfit[0]);
}
