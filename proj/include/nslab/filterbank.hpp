#pragma once

#include <cmath>

namespace nslab {

/// Littlewood-Paley filter bank. Band profiles live in log2|xi| coordinates:
/// a C-infinity bump supported on (1/2, 2) around 2^j, normalized pointwise
/// by the partition sum so that sum_j phi_hat(2^{-j} xi) = 1 exactly for
/// every xi != 0. The fat filter Phi_j = phi_{j-1} + phi_j + phi_{j+1} is
/// identically 1 on 2^{j-1} <= |xi| <= 2^{j+1} and supported in
/// (2^{j-2}, 2^{j+2}).
class DyadicFilterBank {
  public:
    /// Unnormalized bump in band coordinates, support |u| < 1.
    static double bump(double u) {
        if (std::fabs(u) >= 1.0) return 0.0;
        return std::exp(1.0 - 1.0 / (1.0 - u * u));
    }

    /// Normalized band profile phi_hat_j(|xi|).
    static double phi_hat(int j, double r) {
        if (!(r > 0.0)) return 0.0;
        double u = std::log2(r) - double(j);
        double b = bump(u);
        if (b == 0.0) return 0.0;
        return b / partition_sum(std::log2(r));
    }

    /// Fat filter Phi_hat_j(|xi|).
    static double fat_hat(int j, double r) {
        return phi_hat(j - 1, r) + phi_hat(j, r) + phi_hat(j + 1, r);
    }

    /// sum over all integers l of bump(u - l); at most two terms are nonzero.
    static double partition_sum(double u) {
        double fl = std::floor(u);
        double s = 0.0;
        for (int l = -1; l <= 1; ++l) s += bump(u - (fl + double(l)));
        return s;
    }
};

}  // namespace nslab
