#include "nslab/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace nslab {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }
}  // namespace

HalfSpaceGrid::HalfSpaceGrid(int n, std::size_t n_tan, std::size_t n_nor, double length,
                             double height, double grading)
    : n_(n), n_tan_(n_tan), n_nor_(n_nor), length_(length), height_(height), grading_(grading) {
    if (n != 2 && n != 3) throw std::invalid_argument("HalfSpaceGrid: dimension must be 2 or 3");
    if (n_tan < 8 || !is_pow2(n_tan))
        throw std::invalid_argument("HalfSpaceGrid: N_tan must be a power of two >= 8");
    if (n_nor < 8) throw std::invalid_argument("HalfSpaceGrid: N_nor must be >= 8");
    if (!(length > 0.0) || !(height > 0.0))
        throw std::invalid_argument("HalfSpaceGrid: box lengths must be positive");
    if (height < length)
        throw std::invalid_argument("HalfSpaceGrid: H >= L required");
    if (!(grading >= 1.0)) throw std::invalid_argument("HalfSpaceGrid: grading exponent must be >= 1");

    tan_points_ = 1;
    for (int a = 0; a < n_ - 1; ++a) tan_points_ *= n_tan_;

    x_nor_.resize(n_nor_ + 1);
    for (std::size_t j = 0; j <= n_nor_; ++j) {
        double s = double(j) / double(n_nor_);
        x_nor_[j] = height_ * (grading_ == 1.0 ? s : std::pow(s, grading_));
    }
    w_nor_.assign(n_nor_ + 1, 0.0);
    for (std::size_t j = 0; j < n_nor_; ++j) {
        double dx = x_nor_[j + 1] - x_nor_[j];
        w_nor_[j] += 0.5 * dx;
        w_nor_[j + 1] += 0.5 * dx;
    }
    if (grading_ == 1.0 && n_nor_ >= 8) {
        // end-corrected (Gregory, order 4) trapezoid: corrections sum to zero,
        // so constants stay exact
        const double h = height_ / double(n_nor_);
        const double c[3] = {3.0 / 8.0, 7.0 / 6.0, 23.0 / 24.0};
        for (std::size_t j = 0; j < 3; ++j) {
            w_nor_[j] = c[j] * h;
            w_nor_[n_nor_ - j] = c[j] * h;
        }
    }

    j_min_ = int(std::ceil(std::log2(2.0 * kPi / length_) - 1e-12));
    j_max_ = int(std::floor(std::log2(kPi * double(n_tan_) / length_) + 1e-12));
    if (j_max_ < j_min_) throw std::invalid_argument("HalfSpaceGrid: no resolvable dyadic band");
}

double HalfSpaceGrid::tan_frequency(std::size_t bin) const {
    // signed range [-N/2, N/2): the Nyquist bin maps to -N/2
    long k = long(bin);
    if (k >= long(n_tan_) / 2) k -= long(n_tan_);
    return 2.0 * kPi * double(k) / length_;
}

HalfSpaceGrid HalfSpaceGrid::refined(double tan_factor, double nor_factor) const {
    std::size_t nt = n_tan_;
    if (tan_factor > 1.0) {
        std::size_t target = std::size_t(std::lround(double(n_tan_) * tan_factor));
        nt = 8;
        while (nt < target) nt <<= 1;
    }
    std::size_t nn = std::size_t(std::lround(double(n_nor_) * nor_factor));
    return HalfSpaceGrid(n_, nt, nn, length_, height_, grading_);
}

HalfSpaceGrid HalfSpaceGrid::rescaled(double lambda) const {
    return HalfSpaceGrid(n_, n_tan_, n_nor_, length_ / lambda, height_ / lambda, grading_);
}

bool HalfSpaceGrid::same_layout(const HalfSpaceGrid& o) const {
    return n_ == o.n_ && n_tan_ == o.n_tan_ && n_nor_ == o.n_nor_;
}

TimeGrid::TimeGrid(double t0, double ratio, std::size_t count) : ratio_(ratio) {
    if (!(t0 > 0.0)) throw std::invalid_argument("TimeGrid: t0 must be positive");
    if (!(ratio > 1.0)) throw std::invalid_argument("TimeGrid: ratio must exceed 1");
    if (count == 0) throw std::invalid_argument("TimeGrid: empty grid");
    times_.resize(count);
    double t = t0;
    for (std::size_t k = 0; k < count; ++k) {
        times_[k] = t;
        t *= ratio;
        if (!std::isfinite(t)) throw std::invalid_argument("TimeGrid: overflow");
    }
}

}  // namespace nslab
