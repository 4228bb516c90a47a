#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

#include "nslab/fft.hpp"
#include "nslab/field.hpp"
#include "nslab/grid.hpp"

namespace nslab {

/// How half-space data is extended across the wall before a kernel acts on it.
enum class ReflectionKind { None, Odd, Even };

/// Mixed-representation workhorse bound to one grid: tangential DFTs of field
/// components and 1D transforms of normal profiles on the doubled periodic
/// interval [-H, H). Doubled-interval paths require the uniform normal mesh.
class SpectralEngine {
  public:
    explicit SpectralEngine(const HalfSpaceGrid& grid);

    const HalfSpaceGrid& grid() const { return *grid_; }
    std::size_t rows() const { return rows_; }
    std::size_t tan() const { return tan_; }
    std::size_t doubled_size() const { return m_; }

    /// Tangential forward DFT of one real component; out has [rows][tan] layout.
    void tan_forward(const double* comp, cplx* out) const;
    /// Inverse; imaginary residue is dropped (inputs are Hermitian by use).
    void tan_inverse(const cplx* in, double* comp) const;

    /// Tangential frequency vector (length n-1) and magnitude of a flat mode.
    void mode_xi(std::size_t it, double xi[2]) const;
    double mode_mag(std::size_t it) const { return mode_mag_[it]; }
    /// Derivative multiplier along one tangential axis (Nyquist bin -> 0).
    double mode_deriv(std::size_t it, int axis) const { return deriv_[axis][it]; }

    /// In-place tangential spectral derivative of a real component.
    void tangential_derivative(const double* in, double* out, int axis) const;

    /// 2/3-rule tangential truncation applied in place to a real component.
    void dealias(double* comp) const;

    // --- doubled normal interval ---------------------------------------
    /// Normal frequency of doubled bin m (signed, pi*m/H convention).
    double nu(std::size_t m) const { return nu_[m]; }
    /// Extend an upper-half profile (length rows) onto the doubled interval.
    void extend_profile(const cplx* prof, ReflectionKind ext, cplx* doubled) const;
    void profile_fft(cplx* doubled) const;
    void profile_ifft(cplx* doubled) const;
    /// Read back the upper half; reflected = evaluate at -x_n instead.
    void restrict_profile(const cplx* doubled, cplx* prof, bool reflected) const;
    /// Doubled index of upper-half row r.
    std::size_t upper_index(std::size_t r) const { return r < n_nor_ ? n_nor_ + r : 0; }

    // --- full doubled box (all axes spectral), for dyadic analysis ------
    /// Zero/odd/even extension of a real component into the doubled box,
    /// layout [m][tan].
    std::vector<cplx> box_extend(const double* comp, ReflectionKind ext) const;
    void box_fft(std::vector<cplx>& box) const;
    void box_ifft(std::vector<cplx>& box) const;
    /// |xi| of box mode (m, it).
    double box_mode_mag(std::size_t m, std::size_t it) const;
    /// L^p of the real part over the doubled box (p >= 1 or infinity).
    double box_lp(const std::vector<cplx>& box, double p) const;
    /// L^p of the pointwise Euclidean magnitude across several boxes.
    double box_lp_multi(const std::vector<const std::vector<cplx>*>& boxes, double p) const;
    /// Restrict the real part of a box to the upper half as a ScalarField.
    ScalarField box_restrict(const std::vector<cplx>& box) const;

  private:
    const HalfSpaceGrid* grid_;
    std::size_t rows_, tan_, n_nor_, m_;
    std::shared_ptr<const Fft> fft_tan_, fft_dbl_;
    std::vector<double> nu_;
    std::vector<double> mode_mag_;
    std::vector<double> deriv_[2];
    std::vector<std::size_t> axis_bin_[2];
};

}  // namespace nslab
