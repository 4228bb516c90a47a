#pragma once

#include <limits>
#include <utility>
#include <vector>

#include "nslab/field.hpp"
#include "nslab/grid.hpp"
#include "nslab/spectral.hpp"
#include "nslab/trajectory.hpp"

namespace nslab {

/// Homogeneous Besov norm request. Half-space data is measured through its
/// zero extension (the subscript-0 convention); the reported value upper
/// bounds the restriction-infimum norm and is never claimed to equal it.
struct BesovParams {
    double s = 0.0;
    double p = 2.0;
    double q = std::numeric_limits<double>::infinity();
};

struct BandContribution {
    int j;
    double value;  // 2^{js} ||f * phi_j||_p
};

struct NormReport {
    double value = 0.0;
    std::vector<BandContribution> bands;
    int argmax_band = 0;
    /// Set when the sup sits on a boundary band or a boundary band carries
    /// more than 10% of it: the scale is not resolved on this grid.
    bool truncation_flag = false;
};

/// One dyadic band of the zero extension, sampled on the doubled box.
class BandPiece {
  public:
    BandPiece(const HalfSpaceGrid& grid, int j, std::vector<cplx> box)
        : grid_(&grid), j_(j), box_(std::move(box)) {}

    int band() const { return j_; }
    const std::vector<cplx>& box() const { return box_; }
    double lp(double p) const;
    ScalarField restrict_upper() const;

  private:
    const HalfSpaceGrid* grid_;
    int j_;
    std::vector<cplx> box_;
};

BandPiece dyadic_project(const ScalarField& f, int j);

NormReport besov_norm(const FieldBase& f, const BesovParams& params);

/// sup over the time grid of t^{alpha/2} ||Gamma_t * f~||_{L^p} on the
/// doubled box: an independent estimator of the B^{-alpha}_{p,inf} size.
double heat_characterization(const FieldBase& f, double alpha, double p, const TimeGrid& times);

struct ProductCheck {
    double lhs;
    double rhs;
};

/// Two-term product bound at regularity beta: requires 1/r_i + 1/s_i = 1/p.
ProductCheck product_estimate_check(const ScalarField& f1, const ScalarField& f2, double beta,
                                    double p, double s1, double r1, double s2, double r2);

/// Critical norms at integrabilities p < p0.
std::pair<double, double> embedding_check(const FieldBase& f, double p, double p0);

/// sup over sample times of the Besov norm; or-reduces the truncation flags.
double sup_besov_norm(const Trajectory& traj, const BesovParams& params,
                      bool* truncation_flag = nullptr);

}  // namespace nslab
