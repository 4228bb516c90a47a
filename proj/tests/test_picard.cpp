#include <doctest.h>

#include <cmath>
#include <limits>

#include "nslab/ops.hpp"
#include "nslab/picard.hpp"
#include "nslab/scenario.hpp"
#include "nslab/trajectory.hpp"

using namespace nslab;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

// lean configuration: mechanics are exercised here, physics in the
// acceptance suite
struct Lean {
    HalfSpaceGrid grid{2, 64, 96, 2.0 * kPi, 2.0 * kPi};  // wall clearance needs h <= 0.07
    TimeGrid times{1e-4, std::pow(2.0, 0.5), 14};
    PicardOptions opts;
    SmallnessBudget budget;
    Lean() {
        opts.m_max = 8;
        opts.rule.panels = 8;
        auto u0s = ensemble_u0(grid, 1, 5);
        auto gs = ensemble_tensors(grid, 1, 9);
        budget = calibrate_budget(u0s, gs, times, 4.0, 4.0 / 3.0, opts.rule);
    }
};

Lean& lean() {
    static Lean fixture;
    return fixture;
}

VectorField small_data(const Lean& fx, double scale) {
    VectorField u0 = solenoidal_band_sample(fx.grid, 2, 31, 1.0);
    Trajectory probe(fx.grid, fx.times);
    StokesProblem hp(u0, fx.times);
    probe = solve_homogeneous(hp).velocity;
    double unit = weighted_sup_norm(probe, fx.budget.beta0(2), fx.budget.p0);
    VectorField out = u0;
    out.scale(scale * fx.budget.M0 / unit);
    return out;
}

}  // namespace

TEST_CASE("budget calibration produces valid frozen constants") {
    const Lean& fx = lean();
    CHECK(fx.budget.valid());
    CHECK(fx.budget.c6_hat > fx.budget.c5_hat);
    CHECK(fx.budget.M0 <= 1.0 / (2.0 * fx.budget.c1_hat));
    CHECK(fx.budget.M0 <= 1.0 / (2.0 * fx.budget.c5_hat));
    CHECK(fx.budget.M0 < 1.0 / fx.budget.c6_hat);
    CHECK_THROWS(calibrate_budget({}, {}, fx.times, 4.0, 4.0 / 3.0, fx.opts.rule));
}

TEST_CASE("zero data iterates to the zero fixed point") {
    const Lean& fx = lean();
    VectorField zero(fx.grid);
    IterationState st = iterate(zero, fx.budget, fx.times, fx.opts);
    CHECK(st.converged);
    CHECK(!st.aborted);
    for (const auto& r : st.history) {
        CHECK(r.norm_lp0 == 0.0);
        CHECK(r.diff_lp0 == 0.0);
    }
    DecayFit fit = decay_fit(st, 4.0);
    CHECK(fit.degenerate);
}

TEST_CASE("small data contracts; stress amplitude breaks smallness") {
    const Lean& fx = lean();
    VectorField u0 = small_data(fx, 0.5);
    IterationState st = iterate(u0, fx.budget, fx.times, fx.opts);
    CHECK(!st.aborted);
    CHECK(st.converged);
    bool ratios_ok = true;
    for (const auto& r : st.history)
        if (r.m >= 3 && (r.ratio_lp0 >= 1.0 || r.ratio_besov >= 1.0)) ratios_ok = false;
    CHECK(ratios_ok);
    auto rows = contraction_report(st, fx.budget);
    REQUIRE(!rows.empty());
    for (const auto& row : rows)
        if (row.combined_ratio > 0.0) CHECK(row.combined_ratio < 1.0);

    // discrete analogue of the iteration bound with the frozen constant
    double u0_norm = besov_norm(u0, {-1.0 + 2.0 / fx.budget.p0, fx.budget.p0,
                                     std::numeric_limits<double>::infinity()})
                         .value;
    for (std::size_t i = 1; i < st.history.size(); ++i) {
        double prev = st.history[i - 1].norm_lp0;
        CHECK(st.history[i].norm_lp0 <=
              1.05 * fx.budget.c1_hat * (u0_norm + prev * prev) + 1e-12);
    }

    // this lean horizon has a weak bilinear map (tiny c5*M0), so the
    // qualitative flip needs a larger factor than the acceptance scenario's
    VectorField big = small_data(fx, 200.0);
    PicardOptions bopts = fx.opts;
    bopts.m_max = 6;
    IterationState bad = iterate(big, fx.budget, fx.times, bopts);
    bool diverging = bad.aborted;
    for (const auto& r : bad.history)
        if (r.m >= 3 && (r.ratio_lp0 >= 1.0 || r.ratio_besov >= 1.0)) diverging = true;
    CHECK(diverging);
}

TEST_CASE("forcing is bilinear in the iterate") {
    const Lean& fx = lean();
    VectorField u = small_data(fx, 0.5);
    SymTensorField F1 = outer_product(u, true);
    VectorField u2 = u;
    u2.scale(3.0);
    SymTensorField F9 = outer_product(u2, true);
    F1.scale(9.0);
    F9.axpy(-1.0, F1);
    CHECK(F9.max_abs() <= 1e-12 * std::max(1.0, F1.max_abs()));
}

TEST_CASE("uniqueness probe: zero and small perturbations") {
    const Lean& fx = lean();
    VectorField u0 = small_data(fx, 0.4);
    VectorField zero(fx.grid);
    PicardOptions opts = fx.opts;
    opts.m_max = 6;
    UniquenessProbe none = uniqueness_probe(u0, fx.budget, zero, fx.times, opts);
    CHECK(none.final_distance == 0.0);

    VectorField pert = solenoidal_band_sample(fx.grid, 3, 77, 1.0);
    Trajectory probe(fx.grid, fx.times);
    {
        StokesProblem hp(pert, fx.times);
        probe = solve_homogeneous(hp).velocity;
    }
    pert.scale(0.02 * fx.budget.M0 /
               weighted_sup_norm(probe, fx.budget.beta0(2), fx.budget.p0));
    UniquenessProbe up = uniqueness_probe(u0, fx.budget, pert, fx.times, opts);
    CHECK(up.monotone);
    CHECK(up.final_distance <= 2.0 * opts.stop_tol);
    // geometric decay bounded by the fitted contraction constant
    for (std::size_t i = 1; i < up.distances.size(); ++i)
        if (up.distances[i - 1] > 0.0)
            CHECK(up.distances[i] / up.distances[i - 1] <=
                  2.0 * fx.budget.c5_hat * 2.0 * fx.budget.M0 + 0.05);
}

TEST_CASE("iteration is scaling equivariant on the rescaled grid") {
    const Lean& fx = lean();
    VectorField u0 = small_data(fx, 0.4);
    PicardOptions opts = fx.opts;
    opts.m_max = 3;
    IterationState a = iterate(u0, fx.budget, fx.times, opts);

    const double lam = 2.0;
    HalfSpaceGrid gs = fx.grid.rescaled(lam);
    TimeGrid ts = fx.times.rescaled(lam);
    VectorField u0s(gs);
    for (std::size_t i = 0; i < u0.size(); ++i) u0s.data()[i] = lam * u0.data()[i];
    IterationState b = iterate(u0s, fx.budget, ts, opts);

    REQUIRE(a.current);
    REQUIRE(b.current);
    double err = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < a.current->size(); ++k) {
        VectorField ref = (*a.current)[k];
        ref.scale(lam);
        VectorField diff = (*b.current)[k];
        diff.axpy(-1.0, ref);
        err = std::max(err, diff.max_abs());
        scale = std::max(scale, ref.max_abs());
    }
    CHECK(err <= 1e-9 * scale);
}

TEST_CASE("weak-solution residual is small for a converged run") {
    const Lean& fx = lean();
    VectorField u0 = small_data(fx, 0.4);
    IterationState st = iterate(u0, fx.budget, fx.times, fx.opts);
    REQUIRE(st.current);
    double res = weak_solution_residual(*st.current, u0);
    CHECK(res < 0.05);
}

TEST_CASE("contraction report is empty before three iterates exist") {
    const Lean& fx = lean();
    IterationState st;
    st.m = 2;
    CHECK(contraction_report(st, fx.budget).empty());
}
