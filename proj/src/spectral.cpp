#include "nslab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nslab {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

SpectralEngine::SpectralEngine(const HalfSpaceGrid& grid)
    : grid_(&grid), rows_(grid.rows()), tan_(grid.tan_points()), n_nor_(grid.n_nor()),
      m_(2 * grid.n_nor()) {
    fft_tan_ = fft_plan(grid.n_tan());
    fft_dbl_ = fft_plan(m_);

    nu_.resize(m_);
    const double h_height = grid.height();
    for (std::size_t m = 0; m < m_; ++m) {
        long s = long(m);
        if (s >= long(m_) / 2) s -= long(m_);
        nu_[m] = kPi * double(s) / h_height;
    }

    const int naxes = grid.dim() - 1;
    const std::size_t nt = grid.n_tan();
    mode_mag_.resize(tan_);
    for (int a = 0; a < 2; ++a) {
        deriv_[a].assign(tan_, 0.0);
        axis_bin_[a].assign(tan_, 0);
    }
    for (std::size_t it = 0; it < tan_; ++it) {
        std::size_t b0 = it % nt;
        std::size_t b1 = naxes == 2 ? it / nt : 0;
        axis_bin_[0][it] = b0;
        axis_bin_[1][it] = b1;
        double x0 = grid.tan_frequency(b0);
        double x1 = naxes == 2 ? grid.tan_frequency(b1) : 0.0;
        mode_mag_[it] = std::sqrt(x0 * x0 + x1 * x1);
        deriv_[0][it] = (b0 == nt / 2) ? 0.0 : x0;
        deriv_[1][it] = (naxes == 2 && b1 == nt / 2) ? 0.0 : x1;
    }
}

void SpectralEngine::tan_forward(const double* comp, cplx* out) const {
    const std::size_t nt = grid_->n_tan();
    const int naxes = grid_->dim() - 1;
    std::vector<cplx> line(nt);
    for (std::size_t r = 0; r < rows_; ++r) {
        const double* src = comp + r * tan_;
        cplx* dst = out + r * tan_;
        for (std::size_t i = 0; i < tan_; ++i) dst[i] = cplx(src[i], 0.0);
        // axis 0 (contiguous)
        for (std::size_t off = 0; off < tan_; off += nt) fft_tan_->forward(dst + off);
        if (naxes == 2) {
            for (std::size_t i0 = 0; i0 < nt; ++i0) {
                for (std::size_t i1 = 0; i1 < nt; ++i1) line[i1] = dst[i0 + nt * i1];
                fft_tan_->forward(line.data());
                for (std::size_t i1 = 0; i1 < nt; ++i1) dst[i0 + nt * i1] = line[i1];
            }
        }
    }
}

void SpectralEngine::tan_inverse(const cplx* in, double* comp) const {
    const std::size_t nt = grid_->n_tan();
    const int naxes = grid_->dim() - 1;
    std::vector<cplx> work(tan_);
    std::vector<cplx> line(nt);
    for (std::size_t r = 0; r < rows_; ++r) {
        const cplx* src = in + r * tan_;
        for (std::size_t i = 0; i < tan_; ++i) work[i] = src[i];
        if (naxes == 2) {
            for (std::size_t i0 = 0; i0 < nt; ++i0) {
                for (std::size_t i1 = 0; i1 < nt; ++i1) line[i1] = work[i0 + nt * i1];
                fft_tan_->inverse(line.data());
                for (std::size_t i1 = 0; i1 < nt; ++i1) work[i0 + nt * i1] = line[i1];
            }
        }
        for (std::size_t off = 0; off < tan_; off += nt) fft_tan_->inverse(work.data() + off);
        double* dst = comp + r * tan_;
        for (std::size_t i = 0; i < tan_; ++i) dst[i] = work[i].real();
    }
}

void SpectralEngine::mode_xi(std::size_t it, double xi[2]) const {
    xi[0] = grid_->tan_frequency(axis_bin_[0][it]);
    xi[1] = grid_->dim() == 3 ? grid_->tan_frequency(axis_bin_[1][it]) : 0.0;
}

void SpectralEngine::tangential_derivative(const double* in, double* out, int axis) const {
    if (axis < 0 || axis >= grid_->dim() - 1)
        throw std::invalid_argument("tangential_derivative: axis out of range");
    std::vector<cplx> spec(rows_ * tan_);
    tan_forward(in, spec.data());
    for (std::size_t r = 0; r < rows_; ++r) {
        cplx* row = spec.data() + r * tan_;
        for (std::size_t i = 0; i < tan_; ++i) row[i] *= cplx(0.0, deriv_[axis][i]);
    }
    tan_inverse(spec.data(), out);
}

void SpectralEngine::dealias(double* comp) const {
    const std::size_t nt = grid_->n_tan();
    std::vector<cplx> spec(rows_ * tan_);
    tan_forward(comp, spec.data());
    const long cut = long(nt) / 3;
    for (std::size_t r = 0; r < rows_; ++r) {
        cplx* row = spec.data() + r * tan_;
        for (std::size_t i = 0; i < tan_; ++i) {
            long b0 = long(axis_bin_[0][i]);
            if (b0 >= long(nt) / 2) b0 -= long(nt);
            long b1 = long(axis_bin_[1][i]);
            if (b1 >= long(nt) / 2) b1 -= long(nt);
            if (std::labs(b0) > cut || (grid_->dim() == 3 && std::labs(b1) > cut))
                row[i] = cplx(0.0, 0.0);
        }
    }
    tan_inverse(spec.data(), comp);
}

void SpectralEngine::extend_profile(const cplx* prof, ReflectionKind ext, cplx* doubled) const {
    if (!grid_->uniform_normal())
        throw std::invalid_argument("SpectralEngine: doubled-interval path needs a uniform normal mesh");
    const std::size_t nn = n_nor_;
    switch (ext) {
        case ReflectionKind::None:
            doubled[0] = 0.5 * prof[nn];
            for (std::size_t j = 1; j < nn; ++j) doubled[j] = cplx(0.0, 0.0);
            for (std::size_t j = 0; j < nn; ++j) doubled[nn + j] = prof[j];
            break;
        case ReflectionKind::Odd:
            doubled[0] = cplx(0.0, 0.0);
            doubled[nn] = cplx(0.0, 0.0);
            for (std::size_t j = 1; j < nn; ++j) {
                doubled[nn + j] = prof[j];
                doubled[nn - j] = -prof[j];
            }
            break;
        case ReflectionKind::Even:
            doubled[0] = prof[nn];
            doubled[nn] = prof[0];
            for (std::size_t j = 1; j < nn; ++j) {
                doubled[nn + j] = prof[j];
                doubled[nn - j] = prof[j];
            }
            break;
    }
}

void SpectralEngine::profile_fft(cplx* doubled) const { fft_dbl_->forward(doubled); }
void SpectralEngine::profile_ifft(cplx* doubled) const { fft_dbl_->inverse(doubled); }

void SpectralEngine::restrict_profile(const cplx* doubled, cplx* prof, bool reflected) const {
    const std::size_t nn = n_nor_;
    if (!reflected) {
        for (std::size_t j = 0; j < nn; ++j) prof[j] = doubled[nn + j];
        prof[nn] = doubled[0];
    } else {
        for (std::size_t j = 0; j < nn; ++j) prof[j] = doubled[nn - j];
        prof[nn] = doubled[0];
    }
}

std::vector<cplx> SpectralEngine::box_extend(const double* comp, ReflectionKind ext) const {
    if (!grid_->uniform_normal())
        throw std::invalid_argument("SpectralEngine: doubled-box path needs a uniform normal mesh");
    const std::size_t nn = n_nor_;
    std::vector<cplx> box(m_ * tan_, cplx(0.0, 0.0));
    auto set_row = [&](std::size_t m, const double* src, double sign) {
        cplx* dst = box.data() + m * tan_;
        for (std::size_t i = 0; i < tan_; ++i) dst[i] += cplx(sign * src[i], 0.0);
    };
    switch (ext) {
        case ReflectionKind::None:
            set_row(0, comp + nn * tan_, 0.5);
            for (std::size_t j = 0; j < nn; ++j) set_row(nn + j, comp + j * tan_, 1.0);
            break;
        case ReflectionKind::Odd:
            for (std::size_t j = 1; j < nn; ++j) {
                set_row(nn + j, comp + j * tan_, 1.0);
                set_row(nn - j, comp + j * tan_, -1.0);
            }
            break;
        case ReflectionKind::Even:
            set_row(0, comp + nn * tan_, 1.0);
            set_row(nn, comp, 1.0);
            for (std::size_t j = 1; j < nn; ++j) {
                set_row(nn + j, comp + j * tan_, 1.0);
                set_row(nn - j, comp + j * tan_, 1.0);
            }
            break;
    }
    return box;
}

void SpectralEngine::box_fft(std::vector<cplx>& box) const {
    const std::size_t nt = grid_->n_tan();
    const int naxes = grid_->dim() - 1;
    std::vector<cplx> line(std::max(m_, nt));
    for (std::size_t m = 0; m < m_; ++m) {
        cplx* row = box.data() + m * tan_;
        for (std::size_t off = 0; off < tan_; off += nt) fft_tan_->forward(row + off);
        if (naxes == 2) {
            for (std::size_t i0 = 0; i0 < nt; ++i0) {
                for (std::size_t i1 = 0; i1 < nt; ++i1) line[i1] = row[i0 + nt * i1];
                fft_tan_->forward(line.data());
                for (std::size_t i1 = 0; i1 < nt; ++i1) row[i0 + nt * i1] = line[i1];
            }
        }
    }
    for (std::size_t it = 0; it < tan_; ++it) {
        for (std::size_t m = 0; m < m_; ++m) line[m] = box[m * tan_ + it];
        fft_dbl_->forward(line.data());
        for (std::size_t m = 0; m < m_; ++m) box[m * tan_ + it] = line[m];
    }
}

void SpectralEngine::box_ifft(std::vector<cplx>& box) const {
    const std::size_t nt = grid_->n_tan();
    const int naxes = grid_->dim() - 1;
    std::vector<cplx> line(std::max(m_, nt));
    for (std::size_t it = 0; it < tan_; ++it) {
        for (std::size_t m = 0; m < m_; ++m) line[m] = box[m * tan_ + it];
        fft_dbl_->inverse(line.data());
        for (std::size_t m = 0; m < m_; ++m) box[m * tan_ + it] = line[m];
    }
    for (std::size_t m = 0; m < m_; ++m) {
        cplx* row = box.data() + m * tan_;
        if (naxes == 2) {
            for (std::size_t i0 = 0; i0 < nt; ++i0) {
                for (std::size_t i1 = 0; i1 < nt; ++i1) line[i1] = row[i0 + nt * i1];
                fft_tan_->inverse(line.data());
                for (std::size_t i1 = 0; i1 < nt; ++i1) row[i0 + nt * i1] = line[i1];
            }
        }
        for (std::size_t off = 0; off < tan_; off += nt) fft_tan_->inverse(row + off);
    }
}

double SpectralEngine::box_mode_mag(std::size_t m, std::size_t it) const {
    double t = mode_mag_[it];
    double v = nu_[m];
    return std::sqrt(t * t + v * v);
}

double SpectralEngine::box_lp(const std::vector<cplx>& box, double p) const {
    const double cell = std::pow(grid_->tan_spacing(), grid_->dim() - 1) * grid_->nor_spacing();
    if (p == std::numeric_limits<double>::infinity()) {
        double mx = 0.0;
        for (const cplx& z : box) mx = std::max(mx, std::fabs(z.real()));
        return mx;
    }
    double acc = 0.0;
    for (const cplx& z : box) acc += std::pow(std::fabs(z.real()), p);
    return std::pow(acc * cell, 1.0 / p);
}

double SpectralEngine::box_lp_multi(const std::vector<const std::vector<cplx>*>& boxes,
                                    double p) const {
    const double cell = std::pow(grid_->tan_spacing(), grid_->dim() - 1) * grid_->nor_spacing();
    const std::size_t total = m_ * tan_;
    if (p == std::numeric_limits<double>::infinity()) {
        double mx = 0.0;
        for (std::size_t i = 0; i < total; ++i) {
            double s = 0.0;
            for (const auto* b : boxes) {
                double v = (*b)[i].real();
                s += v * v;
            }
            mx = std::max(mx, std::sqrt(s));
        }
        return mx;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < total; ++i) {
        double s = 0.0;
        for (const auto* b : boxes) {
            double v = (*b)[i].real();
            s += v * v;
        }
        acc += std::pow(std::sqrt(s), p);
    }
    return std::pow(acc * cell, 1.0 / p);
}

ScalarField SpectralEngine::box_restrict(const std::vector<cplx>& box) const {
    ScalarField out(*grid_);
    const std::size_t nn = n_nor_;
    for (std::size_t j = 0; j < nn; ++j)
        for (std::size_t i = 0; i < tan_; ++i)
            out.at(j, i) = box[(nn + j) * tan_ + i].real();
    for (std::size_t i = 0; i < tan_; ++i) out.at(nn, i) = box[i].real();
    return out;
}

}  // namespace nslab
