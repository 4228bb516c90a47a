#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nslab/besov.hpp"
#include "nslab/stokes.hpp"
#include "nslab/trajectory.hpp"

namespace nslab {

/// Fitted solver constants and the smallness thresholds derived from them.
/// The constants are measured once per grid from linear-solve ensembles and
/// then frozen; M0 is the working uniform-bound target (with its safety
/// margin already applied) and amplitude calibration aims ||u^1|| at M0/2.
struct SmallnessBudget {
    double p0 = 4.0;       // weighted-Lp0 route, p0 > n
    double p = 4.0 / 3.0;  // Besov route, n/3 < p < n
    double p1 = 1.0;       // product-route integrability, 1/p1 = 1/p0 + 1/p
    double c0_hat = 0.0;   // homogeneous-solve constant
    double c1_hat = 0.0;   // iteration bound ||u^{m+1}|| <= c1(||u0|| + ||u^m||^2)
    double c5_hat = 0.0;   // Duhamel constant, weighted-Lp0 route
    double c6_hat = 0.0;   // Duhamel constant, Besov route (kept > c5_hat)
    double M0 = 0.0;       // calibrated uniform-bound target

    double beta0(int n) const { return 0.5 - double(n) / (2.0 * p0); }
    double besov_s(int n) const { return -1.0 + double(n) / p; }
    bool valid() const { return c0_hat > 0 && c1_hat > 0 && c5_hat > 0 && c6_hat > c5_hat && M0 > 0; }
};

struct IterationRecord {
    int m = 0;
    double norm_lp0 = 0.0;    // ||u^m||_{L^inf_{beta0} L^{p0}}
    double norm_besov = 0.0;  // ||u^m||_{L^inf B^{s}_{p,inf}}
    double diff_lp0 = 0.0;    // ||u^{m+1} - u^m|| recorded at the step that built u^{m+1}
    double diff_besov = 0.0;
    double ratio_lp0 = 0.0;
    double ratio_besov = 0.0;
};

struct IterationState {
    int m = 0;  // index of the newest iterate
    std::vector<IterationRecord> history;
    std::optional<Trajectory> current;   // u^m
    std::optional<Trajectory> previous;  // u^{m-1}
    bool converged = false;
    bool aborted = false;
    std::string abort_reason;
    bool besov_truncation = false;  // critical norm of u0 unresolved
};

struct PicardOptions {
    int m_max = 12;
    double stop_tol = 1e-7;
    GradedRule rule{};
    bool dealias = true;
};

/// Measures c0/c5/c6 from homogeneous and forced linear solves on the given
/// ensembles, derives c1 and the smallness target.
SmallnessBudget calibrate_budget(const std::vector<VectorField>& u0_samples,
                                 const std::vector<SymTensorField>& forcing_shapes,
                                 const TimeGrid& times, double p0, double p,
                                 const GradedRule& rule);

/// The approximation scheme: u^1 solves the homogeneous problem, u^{m+1}
/// solves the forced problem with F^m = -(u^m (x) u^m). Aborts with
/// "smallness violated" when a recorded norm exceeds 1e6 times the first.
IterationState iterate(const VectorField& u0, const SmallnessBudget& budget,
                       const TimeGrid& times, const PicardOptions& opts);

struct ContractionRow {
    int m;
    double diff_lp0, diff_besov;
    double ratio_lp0, ratio_besov;
    double combined;        // diff_besov + A * diff_lp0
    double combined_ratio;  // against the previous row
};

/// Per-iteration contraction table with the coupled quantity
/// ||U||_besov + A ||U||_lp0, A from the fitted constants.
std::vector<ContractionRow> contraction_report(const IterationState& state,
                                               const SmallnessBudget& budget);

/// Distance decay between two chains started from u^1 and u^1 + perturbation.
struct UniquenessProbe {
    std::vector<double> distances;  // weighted-Lp0 distance per iteration
    bool monotone = false;
    double final_distance = 0.0;
};
UniquenessProbe uniqueness_probe(const VectorField& u0, const SmallnessBudget& budget,
                                 const VectorField& perturbation, const TimeGrid& times,
                                 const PicardOptions& opts);

struct DecayFit {
    double slope = 0.0;
    double stderr_ = 0.0;
    bool reliable = false;
    bool degenerate = false;  // zero data, nothing to fit
};

/// Log-log slope of ||u(t)||_{L^{p0}} over the upper half of the time grid.
DecayFit decay_fit(const IterationState& state, double p0);

/// Weak-formulation residual of a velocity trajectory against analytic
/// divergence-free space-time test functions:
/// |∬ u.(ΔΦ + Φ_t) + (u⊗u):∇Φ + ∫ u0.Φ(.,0)| over the sum of term sizes,
/// maximized over the test set. Decreases under refinement for a solution.
double weak_solution_residual(const Trajectory& u, const VectorField& u0, int n_tests = 3);

/// Forcing provider for F = -(u (x) u) built from a trajectory: projected
/// tensors are cached at the sample times and interpolated linearly in log t;
/// below t0 the velocity is extended by the homogeneous solve from u0.
class TrajectoryForcing : public ForcingProvider {
  public:
    TrajectoryForcing(const Trajectory& traj, const VectorField& u0, bool dealias);

    const HalfSpaceGrid& grid() const override { return u0_->grid(); }
    SymTensorField raw(double tau) const override;
    MatrixField fprime(double tau) const override;

  private:
    VectorField velocity_at(double tau) const;

    const Trajectory* traj_;
    const VectorField* u0_;
    bool dealias_;
    std::vector<MatrixField> cached_;  // projected tensors at sample times
};

}  // namespace nslab
