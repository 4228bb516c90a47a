#include "nslab/ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nslab {

namespace {

// Fornberg weights: derivative of given order at x0 from nodes xs.
std::vector<double> fornberg(double x0, const std::vector<double>& xs, int order) {
    const int nd = int(xs.size()) - 1;
    const int m = order;
    std::vector<std::vector<std::vector<double>>> d(
        nd + 1, std::vector<std::vector<double>>(nd + 1, std::vector<double>(m + 1, 0.0)));
    d[0][0][0] = 1.0;
    double c1 = 1.0;
    for (int nn = 1; nn <= nd; ++nn) {
        double c2 = 1.0;
        for (int v = 0; v < nn; ++v) {
            double c3 = xs[nn] - xs[v];
            c2 *= c3;
            for (int k = 0; k <= std::min(nn, m); ++k) {
                double prev = k > 0 ? d[nn - 1][v][k - 1] : 0.0;
                d[nn][v][k] = ((xs[nn] - x0) * d[nn - 1][v][k] - double(k) * prev) / c3;
            }
        }
        for (int k = 0; k <= std::min(nn, m); ++k) {
            double prev = k > 0 ? d[nn - 1][nn - 1][k - 1] : 0.0;
            d[nn][nn][k] = c1 / c2 * (double(k) * prev - (xs[nn - 1] - x0) * d[nn - 1][nn - 1][k]);
        }
        c1 = c2;
    }
    std::vector<double> w(xs.size());
    for (std::size_t v = 0; v < xs.size(); ++v) w[v] = d[nd][v][m];
    return w;
}

}  // namespace

NormalDerivative::NormalDerivative(const HalfSpaceGrid& grid, int order) {
    const auto& x = grid.normal_nodes();
    const std::size_t rows = grid.rows();
    if (rows < width_) throw std::invalid_argument("NormalDerivative: too few rows");
    first_.resize(rows);
    weights_.resize(rows * width_);
    for (std::size_t r = 0; r < rows; ++r) {
        std::size_t lo = r >= 2 ? r - 2 : 0;
        lo = std::min(lo, rows - width_);
        first_[r] = lo;
        std::vector<double> xs(x.begin() + lo, x.begin() + lo + width_);
        auto w = fornberg(x[r], xs, order);
        std::copy(w.begin(), w.end(), weights_.begin() + r * width_);
    }
}

void NormalDerivative::apply(const HalfSpaceGrid& grid, const double* in, double* out) const {
    const std::size_t rows = grid.rows();
    const std::size_t tan = grid.tan_points();
    for (std::size_t r = 0; r < rows; ++r) {
        const double* w = weights_.data() + r * width_;
        const std::size_t lo = first_[r];
        double* dst = out + r * tan;
        std::fill(dst, dst + tan, 0.0);
        for (std::size_t s = 0; s < width_; ++s) {
            const double* src = in + (lo + s) * tan;
            const double c = w[s];
            for (std::size_t i = 0; i < tan; ++i) dst[i] += c * src[i];
        }
    }
}

ScalarField divergence(const VectorField& f) {
    const HalfSpaceGrid& g = f.grid();
    SpectralEngine eng(g);
    NormalDerivative dn(g, 1);
    ScalarField out(g);
    std::vector<double> tmp(f.component_size());
    for (int a = 0; a < g.dim() - 1; ++a) {
        eng.tangential_derivative(f.component(a), tmp.data(), a);
        for (std::size_t i = 0; i < tmp.size(); ++i) out.data()[i] += tmp[i];
    }
    dn.apply(g, f.component(g.dim() - 1), tmp.data());
    for (std::size_t i = 0; i < tmp.size(); ++i) out.data()[i] += tmp[i];
    out.require_finite("divergence");
    return out;
}

std::vector<BoundaryField> boundary_trace(const VectorField& f) {
    std::vector<BoundaryField> out;
    const std::size_t tan = f.grid().tan_points();
    for (std::size_t c = 0; c < f.components(); ++c) {
        BoundaryField b(f.grid());
        const double* row0 = f.component(c);
        for (std::size_t i = 0; i < tan; ++i) b[i] = row0[i];
        out.push_back(std::move(b));
    }
    return out;
}

BoundaryField boundary_trace(const ScalarField& f) {
    BoundaryField b(f.grid());
    const std::size_t tan = f.grid().tan_points();
    for (std::size_t i = 0; i < tan; ++i) b[i] = f.data()[i];
    return b;
}

double lp_norm(const FieldBase& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1 or infinity");
    const HalfSpaceGrid& g = f.grid();
    const std::size_t rows = g.rows(), tan = g.tan_points(), nc = f.components();
    const double tan_cell = std::pow(g.tan_spacing(), g.dim() - 1);
    const auto& wn = g.normal_weights();

    // SymTensorField stores the upper triangle; off-diagonal components count
    // twice in the Frobenius magnitude.
    std::vector<double> mult(nc, 1.0);
    if (auto s = dynamic_cast<const SymTensorField*>(&f)) {
        const std::size_t n = std::size_t(g.dim());
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t l = k; l < n; ++l)
                mult[s->pack(k, l)] = (k == l) ? 1.0 : 2.0;
    }

    if (p == std::numeric_limits<double>::infinity()) {
        double mx = 0.0;
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t i = 0; i < tan; ++i) {
                double s = 0.0;
                for (std::size_t c = 0; c < nc; ++c) {
                    double v = f.at(c, r, i);
                    s += mult[c] * v * v;
                }
                mx = std::max(mx, s);
            }
        return std::sqrt(mx);
    }
    double acc = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
        double wrow = wn[r] * tan_cell;
        for (std::size_t i = 0; i < tan; ++i) {
            double s = 0.0;
            for (std::size_t c = 0; c < nc; ++c) {
                double v = f.at(c, r, i);
                s += mult[c] * v * v;
            }
            acc += wrow * std::pow(s, 0.5 * p);
        }
    }
    return std::pow(acc, 1.0 / p);
}

VectorField gradient(const ScalarField& f) {
    const HalfSpaceGrid& g = f.grid();
    SpectralEngine eng(g);
    NormalDerivative dn(g, 1);
    VectorField out(g);
    for (int a = 0; a < g.dim() - 1; ++a)
        eng.tangential_derivative(f.data(), out.component(a), a);
    dn.apply(g, f.data(), out.component(g.dim() - 1));
    return out;
}

ScalarField laplacian(const ScalarField& f) {
    const HalfSpaceGrid& g = f.grid();
    SpectralEngine eng(g);
    NormalDerivative d2(g, 2);
    ScalarField out(g);
    // tangential part via -|xi|^2 multiplier
    std::vector<cplx> spec(g.rows() * g.tan_points());
    eng.tan_forward(f.data(), spec.data());
    for (std::size_t r = 0; r < g.rows(); ++r) {
        cplx* row = spec.data() + r * g.tan_points();
        for (std::size_t i = 0; i < g.tan_points(); ++i) {
            double m = eng.mode_mag(i);
            row[i] *= -m * m;
        }
    }
    eng.tan_inverse(spec.data(), out.data());
    std::vector<double> tmp(f.component_size());
    d2.apply(g, f.data(), tmp.data());
    for (std::size_t i = 0; i < tmp.size(); ++i) out.data()[i] += tmp[i];
    return out;
}

ScalarField scalar_component(const FieldBase& f, std::size_t c) {
    ScalarField out(f.grid());
    const double* src = f.component(c);
    std::copy(src, src + f.component_size(), out.data());
    return out;
}

SymTensorField outer_product(const VectorField& u, bool dealias_product) {
    const HalfSpaceGrid& g = u.grid();
    SymTensorField out(g);
    const std::size_t n = std::size_t(g.dim());
    const std::size_t sz = u.component_size();
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = k; l < n; ++l) {
            double* dst = out.comp(k, l);
            const double* a = u.component(k);
            const double* b = u.component(l);
            for (std::size_t i = 0; i < sz; ++i) dst[i] = a[i] * b[i];
        }
    if (dealias_product) {
        SpectralEngine eng(g);
        for (std::size_t c = 0; c < out.components(); ++c) eng.dealias(out.component(c));
    }
    return out;
}

double linf_boundary(const std::vector<BoundaryField>& tr) {
    double mx = 0.0;
    for (const auto& b : tr)
        for (std::size_t i = 0; i < b.size(); ++i) mx = std::max(mx, std::fabs(b[i]));
    return mx;
}

}  // namespace nslab
