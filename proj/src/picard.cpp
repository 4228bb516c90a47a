#include "nslab/picard.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nslab/ops.hpp"
#include "nslab/parallel.hpp"
#include "nslab/regress.hpp"

namespace nslab {

namespace {

Trajectory homogeneous_trajectory(const VectorField& u0, const TimeGrid& times) {
    Trajectory traj(u0.grid(), times);
    parallel_for(times.size(), [&](std::size_t k) {
        traj[k] = green_tensor_apply(u0, times[k]);
    });
    return traj;
}

}  // namespace

TrajectoryForcing::TrajectoryForcing(const Trajectory& traj, const VectorField& u0, bool dealias)
    : traj_(&traj), u0_(&u0), dealias_(dealias) {
    cached_.reserve(traj.size());
    std::vector<MatrixField> tmp(traj.size(), MatrixField(u0.grid()));
    parallel_for(traj.size(), [&](std::size_t k) {
        SymTensorField F = outer_product(traj[k], dealias_);
        F.scale(-1.0);
        tmp[k] = project_div_form(F, false).fprime;
    });
    cached_ = std::move(tmp);
}

VectorField TrajectoryForcing::velocity_at(double tau) const {
    const TimeGrid& tg = traj_->times();
    if (tau <= tg.t0()) return green_tensor_apply(*u0_, tau);
    if (tau >= tg[tg.size() - 1]) return (*traj_)[tg.size() - 1];
    std::size_t hi = 1;
    while (tg[hi] < tau) ++hi;
    const double theta = (std::log(tau) - std::log(tg[hi - 1])) /
                         (std::log(tg[hi]) - std::log(tg[hi - 1]));
    VectorField out = (*traj_)[hi - 1];
    out.scale(1.0 - theta);
    out.axpy(theta, (*traj_)[hi]);
    return out;
}

SymTensorField TrajectoryForcing::raw(double tau) const {
    VectorField u = velocity_at(tau);
    SymTensorField F = outer_product(u, dealias_);
    F.scale(-1.0);
    return F;
}

MatrixField TrajectoryForcing::fprime(double tau) const {
    const TimeGrid& tg = traj_->times();
    if (tau <= tg.t0()) {
        SymTensorField F = raw(tau);
        return project_div_form(F, false).fprime;
    }
    if (tau >= tg[tg.size() - 1]) return cached_.back();
    std::size_t hi = 1;
    while (tg[hi] < tau) ++hi;
    const double theta = (std::log(tau) - std::log(tg[hi - 1])) /
                         (std::log(tg[hi]) - std::log(tg[hi - 1]));
    MatrixField out = cached_[hi - 1];
    out.scale(1.0 - theta);
    out.axpy(theta, cached_[hi]);
    return out;
}

SmallnessBudget calibrate_budget(const std::vector<VectorField>& u0_samples,
                                 const std::vector<SymTensorField>& forcing_shapes,
                                 const TimeGrid& times, double p0, double p,
                                 const GradedRule& rule) {
    if (u0_samples.empty() || forcing_shapes.empty())
        throw std::invalid_argument("calibrate_budget: empty ensembles");
    const HalfSpaceGrid& g = u0_samples.front().grid();
    const int n = g.dim();
    if (!(p0 > double(n))) throw std::invalid_argument("calibrate_budget: p0 must exceed n");
    if (!(p > double(n) / 3.0 && p < double(n)))
        throw std::invalid_argument("calibrate_budget: p outside (n/3, n)");

    SmallnessBudget b;
    b.p0 = p0;
    b.p = p;
    b.p1 = 1.0 / (1.0 / p0 + 1.0 / p);
    const double beta0 = b.beta0(n);
    const double s = b.besov_s(n);
    const auto inf = std::numeric_limits<double>::infinity();

    // c0: homogeneous solve against the critical norm of the data
    for (const auto& u0 : u0_samples) {
        Trajectory v = homogeneous_trajectory(u0, times);
        double lhs = weighted_sup_norm(v, beta0, p0);
        double rhs = besov_norm(u0, {-1.0 + double(n) / p0, p0, inf}).value;
        if (rhs > 0.0) b.c0_hat = std::max(b.c0_hat, lhs / rhs);
    }

    // Duhamel constants from the forced problem with a separable forcing
    // F(tau) = phi(tau) G whose weighted sup norm is exactly that of G.
    const double wF = 1.0 - double(n) / p0;
    const double wB = 0.5 - double(n) / (2.0 * b.p1) + double(n) / (2.0 * p);
    // projection is linear and the forcing separable, so the projected shape
    // is computed once and rescaled per node
    struct SeparableForcing : ForcingProvider {
        const SymTensorField* shape;
        MatrixField fshape;
        double weight, t0;
        SeparableForcing(const SymTensorField& s_, double w_, double t0_)
            : shape(&s_), fshape(project_div_form(s_, false).fprime), weight(w_), t0(t0_) {}
        const HalfSpaceGrid& grid() const override { return shape->grid(); }
        SymTensorField raw(double tau) const override {
            SymTensorField F = *shape;
            F.scale(std::pow(std::max(tau, t0), -weight));
            return F;
        }
        MatrixField fprime(double tau) const override {
            MatrixField out = fshape;
            out.scale(std::pow(std::max(tau, t0), -weight));
            return out;
        }
    };
    for (const auto& G : forcing_shapes) {
        SeparableForcing f1(G, wF, times.t0());
        Trajectory V(g, times);
        parallel_for(times.size(), [&](std::size_t k) {
            V[k] = duhamel_apply(f1, times[k], rule);
        });
        double lhs = weighted_sup_norm(V, beta0, p0);
        double rhs = lp_norm(G, p0 / 2.0);
        if (rhs > 0.0) b.c5_hat = std::max(b.c5_hat, lhs / rhs);

        SeparableForcing f2(G, wB, times.t0());
        Trajectory W(g, times);
        parallel_for(times.size(), [&](std::size_t k) {
            W[k] = duhamel_apply(f2, times[k], rule);
        });
        double lhsB = sup_besov_norm(W, {s, p, inf});
        double rhsB = besov_norm(G, {s, b.p1, inf}).value;
        if (rhsB > 0.0) b.c6_hat = std::max(b.c6_hat, lhsB / rhsB);
    }

    b.c1_hat = std::max(b.c0_hat, b.c5_hat);
    b.c6_hat = std::max(b.c6_hat, 1.0001 * b.c5_hat);
    // contraction target ~0.2, capped by the smallness thresholds
    double m0_ceiling = std::min({1.0 / (2.0 * b.c1_hat), 1.0 / (2.0 * b.c5_hat), 0.999 / b.c6_hat});
    b.M0 = std::min({0.1 / b.c5_hat, 0.2 / b.c6_hat, 0.5 * m0_ceiling});
    return b;
}

IterationState iterate(const VectorField& u0, const SmallnessBudget& budget,
                       const TimeGrid& times, const PicardOptions& opts) {
    if (opts.m_max < 2) throw std::invalid_argument("iterate: m_max must be >= 2");
    check_stokes_data(u0);
    const int n = u0.grid().dim();
    const double beta0 = budget.beta0(n);
    const BesovParams bp{budget.besov_s(n), budget.p, std::numeric_limits<double>::infinity()};

    IterationState state;
    state.besov_truncation =
        besov_norm(u0, {-1.0 + double(n) / budget.p0, budget.p0,
                        std::numeric_limits<double>::infinity()})
            .truncation_flag;

    Trajectory u1 = homogeneous_trajectory(u0, times);
    state.m = 1;
    {
        IterationRecord rec;
        rec.m = 1;
        rec.norm_lp0 = weighted_sup_norm(u1, beta0, budget.p0);
        rec.norm_besov = sup_besov_norm(u1, bp);
        state.history.push_back(rec);
    }
    const double initial = std::max(state.history[0].norm_lp0, 1e-300);

    Trajectory prev = u1;
    for (int m = 1; m < opts.m_max; ++m) {
        TrajectoryForcing forcing(prev, u0, opts.dealias);
        Trajectory next(u0.grid(), times);
        parallel_for(times.size(), [&](std::size_t k) {
            next[k] = u1[k];
            VectorField V = duhamel_apply(forcing, times[k], opts.rule);
            next[k].axpy(1.0, V);
        });
        next.require_finite("iterate");

        Trajectory diff = trajectory_difference(next, prev);
        IterationRecord rec;
        rec.m = m + 1;
        rec.norm_lp0 = weighted_sup_norm(next, beta0, budget.p0);
        rec.norm_besov = sup_besov_norm(next, bp);
        rec.diff_lp0 = weighted_sup_norm(diff, beta0, budget.p0);
        rec.diff_besov = sup_besov_norm(diff, bp);
        const IterationRecord& last = state.history.back();
        if (last.diff_lp0 > 0.0) rec.ratio_lp0 = rec.diff_lp0 / last.diff_lp0;
        if (last.diff_besov > 0.0) rec.ratio_besov = rec.diff_besov / last.diff_besov;
        state.history.push_back(rec);
        state.m = m + 1;

        if (rec.norm_lp0 > 1e6 * initial || !std::isfinite(rec.norm_lp0)) {
            state.aborted = true;
            state.abort_reason = "smallness violated";
            state.previous = std::move(prev);
            state.current = std::move(next);
            return state;
        }
        state.previous = prev;
        prev = std::move(next);
        if (rec.diff_lp0 < opts.stop_tol && rec.diff_besov < opts.stop_tol) {
            state.converged = true;
            break;
        }
    }
    state.current = std::move(prev);
    return state;
}

std::vector<ContractionRow> contraction_report(const IterationState& state,
                                               const SmallnessBudget& budget) {
    std::vector<ContractionRow> rows;
    if (state.m < 3) return rows;
    double m0_hat = 0.0, m_hat = 0.0;
    for (const auto& r : state.history) {
        m0_hat = std::max(m0_hat, r.norm_lp0);
        m_hat = std::max(m_hat, r.norm_besov);
    }
    const double denom = (budget.c6_hat - budget.c5_hat) * std::max(m0_hat, 1e-300);
    const double A = budget.c6_hat * std::max(m_hat, 1e-300) / denom;
    double prev_combined = 0.0;
    for (const auto& r : state.history) {
        if (r.m < 2) continue;
        ContractionRow row{};
        row.m = r.m;
        row.diff_lp0 = r.diff_lp0;
        row.diff_besov = r.diff_besov;
        row.ratio_lp0 = r.ratio_lp0;
        row.ratio_besov = r.ratio_besov;
        row.combined = r.diff_besov + A * r.diff_lp0;
        row.combined_ratio = prev_combined > 0.0 ? row.combined / prev_combined : 0.0;
        prev_combined = row.combined;
        rows.push_back(row);
    }
    return rows;
}

UniquenessProbe uniqueness_probe(const VectorField& u0, const SmallnessBudget& budget,
                                 const VectorField& perturbation, const TimeGrid& times,
                                 const PicardOptions& opts) {
    check_stokes_data(u0);
    check_stokes_data(perturbation);
    const int n = u0.grid().dim();
    const double beta0 = budget.beta0(n);

    Trajectory u1 = homogeneous_trajectory(u0, times);
    Trajectory chain_a = u1;
    Trajectory chain_b = u1;
    for (std::size_t k = 0; k < chain_b.size(); ++k) chain_b[k].axpy(1.0, perturbation);

    UniquenessProbe probe;
    probe.distances.push_back(
        weighted_sup_norm(trajectory_difference(chain_a, chain_b), beta0, budget.p0));

    for (int m = 1; m < opts.m_max; ++m) {
        TrajectoryForcing fa(chain_a, u0, opts.dealias);
        TrajectoryForcing fb(chain_b, u0, opts.dealias);
        Trajectory next_a(u0.grid(), times), next_b(u0.grid(), times);
        parallel_for(times.size(), [&](std::size_t k) {
            next_a[k] = u1[k];
            next_a[k].axpy(1.0, duhamel_apply(fa, times[k], opts.rule));
            next_b[k] = u1[k];
            next_b[k].axpy(1.0, duhamel_apply(fb, times[k], opts.rule));
        });
        chain_a = std::move(next_a);
        chain_b = std::move(next_b);
        probe.distances.push_back(
            weighted_sup_norm(trajectory_difference(chain_a, chain_b), beta0, budget.p0));
        if (probe.distances.back() < opts.stop_tol) break;
    }
    probe.monotone = true;
    for (std::size_t i = 1; i < probe.distances.size(); ++i)
        if (probe.distances[i] > probe.distances[i - 1]) probe.monotone = false;
    probe.final_distance = probe.distances.back();
    return probe;
}

namespace {

// analytic test function: chi = sin(k x1 + phase) G(xn) T(t), Phi = curl(chi)
struct TestFunction {
    double k, phase, c, w, tc;
    double s(double x) const { return std::sin(k * x + phase); }
    double sp(double x) const { return k * std::cos(k * x + phase); }
    double G(double z) const { double y = (z - c) / w; return std::exp(-y * y); }
    double Gp(double z) const { double y = (z - c) / w; return -2.0 * y / w * G(z); }
    double Gpp(double z) const {
        double y = (z - c) / w;
        return (4.0 * y * y - 2.0) / (w * w) * G(z);
    }
    double Gppp(double z) const {
        double y = (z - c) / w;
        return (12.0 * y - 8.0 * y * y * y) / (w * w * w) * G(z);
    }
    double T(double t) const { double y = t / tc; return std::exp(-y * y); }
    double Tp(double t) const { return -2.0 * t / (tc * tc) * T(t); }
};

}  // namespace

double weak_solution_residual(const Trajectory& u, const VectorField& u0, int n_tests) {
    const HalfSpaceGrid& g = u.grid();
    if (g.dim() != 2)
        throw std::invalid_argument("weak_solution_residual: two-dimensional check");
    const TimeGrid& tg = u.times();
    const double t_end = tg[tg.size() - 1];
    const double tan_cell = std::pow(g.tan_spacing(), g.dim() - 1);
    const auto& wn = g.normal_weights();
    const auto& xn = g.normal_nodes();

    double worst = 0.0;
    for (int q = 0; q < n_tests; ++q) {
        TestFunction tf;
        tf.k = 1.0 + double(q % 2);
        tf.phase = 0.35 * double(q);
        tf.c = 0.40 * g.height() + 0.05 * g.height() * double(q);
        tf.w = 0.10 * g.height();
        tf.tc = t_end / 3.0;

        // spatial integrals against one velocity field at fixed t
        auto space_terms = [&](const VectorField& v, double t, double& lin, double& quad) {
            lin = 0.0;
            quad = 0.0;
            const double Tt = tf.T(t), Tpt = tf.Tp(t);
            for (std::size_t r = 0; r < g.rows(); ++r) {
                const double z = xn[r];
                const double G = tf.G(z), Gp = tf.Gp(z), Gpp = tf.Gpp(z), Gppp = tf.Gppp(z);
                const double wrow = wn[r] * tan_cell;
                const double* u1 = v.component(0) + r * g.tan_points();
                const double* u2 = v.component(1) + r * g.tan_points();
                for (std::size_t i = 0; i < g.tan_points(); ++i) {
                    double x1 = double(i) * g.tan_spacing();
                    double sv = tf.s(x1), spv = tf.sp(x1);
                    double phi1 = sv * Gp * Tt;
                    double phi2 = -spv * G * Tt;
                    double lap1 = (-tf.k * tf.k * sv * Gp + sv * Gppp) * Tt;
                    double lap2 = -(spv * Gpp - tf.k * tf.k * spv * G) * Tt;
                    double phit1 = sv * Gp * Tpt;
                    double phit2 = -spv * G * Tpt;
                    double d1p1 = spv * Gp * Tt, d2p1 = sv * Gpp * Tt;
                    double d1p2 = tf.k * tf.k * sv * G * Tt, d2p2 = -spv * Gp * Tt;
                    (void)phi1;
                    (void)phi2;
                    lin += wrow * (u1[i] * (lap1 + phit1) + u2[i] * (lap2 + phit2));
                    quad += wrow * (u1[i] * u1[i] * d1p1 + u1[i] * u2[i] * (d2p1 + d1p2) +
                                    u2[i] * u2[i] * d2p2);
                }
            }
        };

        // time quadrature: the [0, t0] strip uses the initial datum
        double acc = 0.0, size = 0.0;
        double lin_prev, quad_prev;
        space_terms(u0, 0.0, lin_prev, quad_prev);
        double t_prev = 0.0;
        for (std::size_t kk = 0; kk < tg.size(); ++kk) {
            double lin, quad;
            space_terms(u[kk], tg[kk], lin, quad);
            double dt = tg[kk] - t_prev;
            acc += 0.5 * dt * (lin + quad + lin_prev + quad_prev);
            size += 0.5 * dt * (std::fabs(lin) + std::fabs(quad) + std::fabs(lin_prev) +
                                std::fabs(quad_prev));
            lin_prev = lin;
            quad_prev = quad;
            t_prev = tg[kk];
        }
        // initial term
        double init = 0.0;
        for (std::size_t r = 0; r < g.rows(); ++r) {
            const double z = xn[r];
            const double wrow = wn[r] * tan_cell;
            const double* u1 = u0.component(0) + r * g.tan_points();
            const double* u2 = u0.component(1) + r * g.tan_points();
            for (std::size_t i = 0; i < g.tan_points(); ++i) {
                double x1 = double(i) * g.tan_spacing();
                init += wrow * (u1[i] * tf.s(x1) * tf.Gp(z) - u2[i] * tf.sp(x1) * tf.G(z));
            }
        }
        acc += init;
        size += std::fabs(init);
        if (size > 0.0) worst = std::max(worst, std::fabs(acc) / size);
    }
    return worst;
}

DecayFit decay_fit(const IterationState& state, double p0) {
    DecayFit fit;
    if (!state.current) {
        fit.degenerate = true;
        return fit;
    }
    const Trajectory& u = *state.current;
    std::vector<std::pair<double, double>> series;
    for (std::size_t k = u.size() / 2; k < u.size(); ++k) {
        double v = lp_norm(u[k], p0);
        if (v <= 0.0) {
            fit.degenerate = true;
            return fit;
        }
        series.push_back({u.times()[k], v});
    }
    if (series.size() < 5) {
        fit.degenerate = true;
        return fit;
    }
    SlopeFit sf = slope_regress(series, 0, series.size());
    fit.slope = sf.slope;
    fit.stderr_ = sf.stderr_;
    fit.reliable = !state.besov_truncation;
    return fit;
}

}  // namespace nslab
