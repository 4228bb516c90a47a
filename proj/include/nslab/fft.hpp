#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace nslab {

using cplx = std::complex<double>;

/// Complex FFT plan for a fixed size. Powers of two run an iterative radix-2
/// transform, other smooth sizes (factors 2/3/5/7) a recursive mixed-radix
/// decimation in time, and remaining sizes Bluestein's chirp-z on an internal
/// power-of-two plan. Methods are const and reentrant.
class Fft {
  public:
    explicit Fft(std::size_t n);

    std::size_t size() const { return n_; }

    /// In-place forward DFT: X_k = sum_j x_j exp(-2*pi*i*j*k/n).
    void forward(cplx* data) const;

    /// In-place inverse DFT with 1/n normalization.
    void inverse(cplx* data) const;

  private:
    enum class Kind { Pow2, Mixed, Bluestein };

    void pow2_forward(cplx* data) const;
    void mixed_forward(cplx* data) const;
    void bluestein_forward(cplx* data) const;

    std::size_t n_ = 0;
    Kind kind_ = Kind::Pow2;
    // radix-2 tables
    std::vector<std::size_t> bitrev_;
    std::vector<cplx> twiddle_;
    // mixed-radix: n = r * m, recursive subplan of size m
    std::size_t radix_ = 0, sub_n_ = 0;
    std::shared_ptr<const Fft> sub_;
    std::vector<cplx> tw_qk_;   // W_n^{q*k}, [r][m]
    std::vector<cplx> tw_qs_;   // W_r^{q*s}, [r][r]
    // bluestein
    std::size_t m_ = 0;
    std::shared_ptr<const Fft> inner_;
    std::vector<cplx> chirp_;
    std::vector<cplx> bspec_;
};

/// Shared plan cache (thread-safe).
std::shared_ptr<const Fft> fft_plan(std::size_t n);

}  // namespace nslab
