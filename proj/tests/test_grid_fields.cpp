#include <doctest.h>

#include <cmath>
#include <limits>

#include "nslab/field.hpp"
#include "nslab/grid.hpp"
#include "nslab/io.hpp"
#include "nslab/ops.hpp"
#include "nslab/rng.hpp"
#include "nslab/scenario.hpp"
#include "nslab/trajectory.hpp"

using namespace nslab;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
const double kInf = std::numeric_limits<double>::infinity();

HalfSpaceGrid desk(std::size_t nt = 64, std::size_t nn = 48) {
    return HalfSpaceGrid(2, nt, nn, 2.0 * kPi, 2.0 * kPi);
}
}  // namespace

TEST_CASE("grid invariants are enforced") {
    CHECK_THROWS(HalfSpaceGrid(2, 6, 16, 1.0, 1.0));    // N_tan too small
    CHECK_THROWS(HalfSpaceGrid(2, 24, 16, 1.0, 1.0));   // not a power of two
    CHECK_THROWS(HalfSpaceGrid(2, 16, 4, 1.0, 1.0));    // N_nor too small
    CHECK_THROWS(HalfSpaceGrid(2, 16, 16, 2.0, 1.0));   // H < L
    CHECK_THROWS(HalfSpaceGrid(4, 16, 16, 1.0, 1.0));   // dimension
    HalfSpaceGrid g = desk();
    CHECK(g.j_min() == 0);
    CHECK(g.j_max() == 5);  // pi*64/(2*pi) = 32
    CHECK(std::pow(2.0, g.j_max()) <= kPi * double(g.n_tan()) / g.length() + 1e-9);
    CHECK(std::pow(2.0, g.j_min()) >= 2.0 * kPi / g.length() - 1e-9);
}

TEST_CASE("time grid is geometric, increasing, finite") {
    TimeGrid t(1e-3, std::pow(2.0, 0.25), 48);
    CHECK(t.size() == 48);
    for (std::size_t k = 1; k < t.size(); ++k) {
        CHECK(t[k] > t[k - 1]);
        CHECK(t[k] == doctest::Approx(t[k - 1] * std::pow(2.0, 0.25)));
    }
    CHECK_THROWS(TimeGrid(0.0, 2.0, 4));
    CHECK_THROWS(TimeGrid(1.0, 0.9, 4));
}

TEST_CASE("divergence of a zero field and of a discrete curl vanish") {
    HalfSpaceGrid g = desk();
    VectorField zero(g);
    CHECK(lp_norm(divergence(zero), kInf) == 0.0);

    ScenarioSpec spec;
    spec.family = "dipole_exact";
    spec.n_tan = g.n_tan();
    spec.n_nor = g.n_nor();
    VectorField u = generate_initial_data(spec, g);
    double scale = u.max_abs();
    CHECK(lp_norm(divergence(u), kInf) <= 1e-11 * scale * double(g.n_tan()));
    // the discrete wall derivative of x^2 exp(-x) leaves an O(h^4) trace
    CHECK(linf_boundary(boundary_trace(u)) <= 5e-3 * scale);

    // the plateau family needs the wall clearance resolved (rows 0..4 inside it)
    ScenarioSpec plateau;
    plateau.family = "dipole";
    HalfSpaceGrid gd = plateau.make_grid();
    VectorField up = generate_initial_data(plateau, gd);
    CHECK(linf_boundary(boundary_trace(up)) == 0.0);
    CHECK(lp_norm(divergence(up), kInf) <= 1e-11 * up.max_abs() * double(gd.n_tan()));
}

TEST_CASE("divergence converges at fourth order on an analytic field") {
    // f1 = sin(2*pi*x1/L) * xn * exp(-xn): its tangential derivative is
    // spectral (exact); f2 = cos(x1) * sin(xn) exercises the normal stencil.
    double prev_err = 0.0;
    for (std::size_t n : {32u, 64u, 128u}) {
        HalfSpaceGrid g(2, n, n, 2.0 * kPi, 2.0 * kPi);
        VectorField f(g);
        const auto& xn = g.normal_nodes();
        for (std::size_t r = 0; r < g.rows(); ++r)
            for (std::size_t i = 0; i < g.tan_points(); ++i) {
                double x1 = double(i) * g.tan_spacing();
                f.at(0, r, i) = std::sin(x1) * xn[r] * std::exp(-xn[r]);
                f.at(1, r, i) = std::cos(x1) * std::sin(xn[r]);
            }
        ScalarField d = divergence(f);
        double err = 0.0;
        for (std::size_t r = 0; r < g.rows(); ++r)
            for (std::size_t i = 0; i < g.tan_points(); ++i) {
                double x1 = double(i) * g.tan_spacing();
                double exact = std::cos(x1) * (xn[r] * std::exp(-xn[r]) + std::cos(xn[r]));
                err = std::max(err, std::fabs(d.at(r, i) - exact));
            }
        if (prev_err > 0.0) CHECK(err < prev_err / 10.0);  // >= 4th order would give /16
        prev_err = err;
    }
    CHECK(prev_err < 5e-6);
}

TEST_CASE("boundary trace slices the wall row exactly") {
    HalfSpaceGrid g = desk();
    VectorField f(g);
    const auto& xn = g.normal_nodes();
    for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t i = 0; i < g.tan_points(); ++i) {
            f.at(0, r, i) = xn[r] * (1.0 + double(i));        // vanishes at the wall
            f.at(1, r, i) = std::exp(-xn[r]) * double(i + 1); // wall value i+1
        }
    auto tr = boundary_trace(f);
    for (std::size_t i = 0; i < g.tan_points(); ++i) {
        CHECK(tr[0][i] == 0.0);
        CHECK(tr[1][i] == doctest::Approx(double(i + 1)));
    }
}

TEST_CASE("lp_norm: constants, homogeneity, closed-form integral") {
    HalfSpaceGrid g(2, 32, 32, 1.0, 1.0);
    ScalarField one(g);
    one.fill(1.0);
    for (double p : {1.0, 2.0, 4.0}) CHECK(lp_norm(one, p) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(lp_norm(one, kInf) == doctest::Approx(1.0));
    CHECK_THROWS(lp_norm(one, 0.5));

    // f = exp(-xn) sin(2 pi x1 / L), p = 2: closed form per axis
    HalfSpaceGrid g2(2, 128, 128, 1.0, 1.0);
    ScalarField f(g2);
    const auto& xn = g2.normal_nodes();
    for (std::size_t r = 0; r < g2.rows(); ++r)
        for (std::size_t i = 0; i < g2.tan_points(); ++i)
            f.at(r, i) = std::exp(-xn[r]) * std::sin(2.0 * kPi * double(i) * g2.tan_spacing());
    double exact = std::sqrt(0.5 * (1.0 - std::exp(-2.0)) / 2.0);
    CHECK(lp_norm(f, 2.0) == doctest::Approx(exact).epsilon(1e-8));

    ScalarField lam = f;
    lam.scale(-3.5);
    CHECK(lp_norm(lam, 2.0) == doctest::Approx(3.5 * lp_norm(f, 2.0)).epsilon(1e-14));
}

TEST_CASE("weighted sup norm cancels synthetic power laws and is monotone") {
    HalfSpaceGrid g = desk(16, 12);
    TimeGrid times(1e-2, 2.0, 8);
    Trajectory traj(g, times);
    for (std::size_t k = 0; k < times.size(); ++k) {
        traj[k].fill(0.0);
        // ||f(t)||_inf = t^{-beta}: load one component only
        double v = std::pow(times[k], -0.75);
        double* c0 = traj[k].component(0);
        for (std::size_t i = 0; i < traj[k].component_size(); ++i) c0[i] = v;
    }
    double w = weighted_sup_norm(traj, 0.75, kInf);
    CHECK(w == doctest::Approx(1.0).epsilon(1e-12));

    Trajectory zero(g, times);
    CHECK(weighted_sup_norm(zero, 0.3, 2.0) == 0.0);

    // domination: scaling one trajectory up raises the norm
    Trajectory big = traj;
    for (std::size_t k = 0; k < times.size(); ++k) big[k].scale(2.0);
    CHECK(weighted_sup_norm(big, 0.75, kInf) >= w);
}

TEST_CASE("field serialization round-trips") {
    HalfSpaceGrid g = desk(16, 12);
    VectorField f(g);
    Rng rng(5);
    for (std::size_t i = 0; i < f.size(); ++i) f.data()[i] = rng.gaussian();
    write_field(f, "roundtrip.field");
    LoadedField lf = read_field("roundtrip.field");
    REQUIRE(lf.components == 2);
    REQUIRE(lf.samples.size() == f.size());
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(lf.samples[i] == f.data()[i]);
}

TEST_CASE("graded mesh: nodes cluster at the wall, quadrature still exact for constants") {
    HalfSpaceGrid g(2, 16, 32, 2.0 * kPi, 2.0 * kPi, 2.0);
    const auto& x = g.normal_nodes();
    CHECK(x.front() == 0.0);
    CHECK(x.back() == doctest::Approx(g.height()));
    CHECK(x[1] - x[0] < x[g.n_nor()] - x[g.n_nor() - 1]);
    ScalarField one(g);
    one.fill(1.0);
    CHECK(lp_norm(one, 1.0) ==
          doctest::Approx(g.length() * g.height()).epsilon(1e-12));
}
