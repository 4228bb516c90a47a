#include "nslab/multiplier.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "nslab/filterbank.hpp"
#include "nslab/spectral.hpp"

namespace nslab {

int fat_band_max(const HalfSpaceGrid& grid) {
    const double kPi = 3.141592653589793238462643383279502884;
    double xi_t = kPi * double(grid.n_tan()) / grid.length();
    double nu_max = kPi * double(grid.n_nor()) / grid.height();
    double cap = std::min(xi_t, nu_max);
    int j = int(std::floor(std::log2(cap))) - 2;
    return std::min(j, grid.j_max());
}

MultiplierDecay multiplier_decay_check(const HalfSpaceGrid& grid, int j, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("multiplier_decay_check: t must be positive");
    if (j < grid.j_min() || j > fat_band_max(grid))
        throw std::invalid_argument("multiplier_decay_check: band outside resolvable range");
    SpectralEngine eng(grid);
    const std::size_t m = eng.doubled_size(), tan = eng.tan();
    std::vector<cplx> box(m * tan);
    for (std::size_t q = 0; q < m; ++q)
        for (std::size_t i = 0; i < tan; ++i) {
            double mag = eng.box_mode_mag(q, i);
            box[q * tan + i] =
                cplx(DyadicFilterBank::fat_hat(j, mag) * std::exp(-t * mag * mag), 0.0);
        }
    eng.box_ifft(box);
    // With the multiplier defined bin-wise, sum_m |ifft_m| is exactly the L^1
    // norm of the discrete kernel (the cell volume cancels).
    double l1 = 0.0;
    for (const cplx& z : box) l1 += std::abs(z);
    const double s = t * std::pow(2.0, 2.0 * double(j));
    return {l1, std::exp(-s / 8.0)};
}

}  // namespace nslab
