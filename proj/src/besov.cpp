#include "nslab/besov.hpp"

#include <cmath>
#include <stdexcept>

#include "nslab/filterbank.hpp"

namespace nslab {

namespace {

bool is_inf(double q) { return q == std::numeric_limits<double>::infinity(); }

std::vector<std::vector<cplx>> component_spectra(const FieldBase& f, const SpectralEngine& eng) {
    std::vector<std::vector<cplx>> spectra;
    spectra.reserve(f.components());
    for (std::size_t c = 0; c < f.components(); ++c) {
        auto box = eng.box_extend(f.component(c), ReflectionKind::None);
        eng.box_fft(box);
        spectra.push_back(std::move(box));
    }
    return spectra;
}

}  // namespace

double BandPiece::lp(double p) const {
    SpectralEngine eng(*grid_);
    return eng.box_lp(box_, p);
}

ScalarField BandPiece::restrict_upper() const {
    SpectralEngine eng(*grid_);
    return eng.box_restrict(box_);
}

BandPiece dyadic_project(const ScalarField& f, int j) {
    const HalfSpaceGrid& g = f.grid();
    if (j < g.j_min() || j > g.j_max())
        throw std::invalid_argument("dyadic_project: band outside the resolvable range");
    SpectralEngine eng(g);
    auto box = eng.box_extend(f.data(), ReflectionKind::None);
    eng.box_fft(box);
    const std::size_t m = eng.doubled_size(), tan = eng.tan();
    for (std::size_t q = 0; q < m; ++q)
        for (std::size_t i = 0; i < tan; ++i)
            box[q * tan + i] *= DyadicFilterBank::phi_hat(j, eng.box_mode_mag(q, i));
    eng.box_ifft(box);
    return BandPiece(g, j, std::move(box));
}

NormReport besov_norm(const FieldBase& f, const BesovParams& params) {
    if (!(params.p >= 1.0)) throw std::invalid_argument("besov_norm: p must be >= 1 or infinity");
    if (!(params.q >= 1.0)) throw std::invalid_argument("besov_norm: q must be >= 1 or infinity");
    const HalfSpaceGrid& g = f.grid();
    SpectralEngine eng(g);
    auto spectra = component_spectra(f, eng);
    const std::size_t m = eng.doubled_size(), tan = eng.tan();

    NormReport report;
    std::vector<std::vector<cplx>> pieces(f.components());
    for (int j = g.j_min(); j <= g.j_max(); ++j) {
        for (std::size_t c = 0; c < f.components(); ++c) {
            pieces[c] = spectra[c];
            for (std::size_t q = 0; q < m; ++q)
                for (std::size_t i = 0; i < tan; ++i)
                    pieces[c][q * tan + i] *=
                        DyadicFilterBank::phi_hat(j, eng.box_mode_mag(q, i));
            eng.box_ifft(pieces[c]);
        }
        std::vector<const std::vector<cplx>*> refs;
        for (auto& b : pieces) refs.push_back(&b);
        double band_lp = eng.box_lp_multi(refs, params.p);
        report.bands.push_back({j, std::pow(2.0, double(j) * params.s) * band_lp});
    }

    double sup = 0.0;
    int argmax = g.j_min();
    for (const auto& b : report.bands)
        if (b.value > sup) {
            sup = b.value;
            argmax = b.j;
        }
    report.argmax_band = argmax;
    if (is_inf(params.q)) {
        report.value = sup;
    } else {
        double acc = 0.0;
        for (const auto& b : report.bands) acc += std::pow(b.value, params.q);
        report.value = std::pow(acc, 1.0 / params.q);
    }
    const double lo = report.bands.front().value;
    const double hi = report.bands.back().value;
    report.truncation_flag = sup > 0.0 && (argmax == g.j_min() || argmax == g.j_max() ||
                                           lo > 0.1 * sup || hi > 0.1 * sup);
    return report;
}

double heat_characterization(const FieldBase& f, double alpha, double p, const TimeGrid& times) {
    if (!(alpha > 0.0)) throw std::invalid_argument("heat_characterization: alpha must be positive");
    const HalfSpaceGrid& g = f.grid();
    SpectralEngine eng(g);
    auto spectra = component_spectra(f, eng);
    const std::size_t m = eng.doubled_size(), tan = eng.tan();

    double sup = 0.0;
    std::vector<std::vector<cplx>> ev(f.components());
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double t = times[k];
        for (std::size_t c = 0; c < f.components(); ++c) {
            ev[c] = spectra[c];
            for (std::size_t q = 0; q < m; ++q)
                for (std::size_t i = 0; i < tan; ++i) {
                    double mag = eng.box_mode_mag(q, i);
                    ev[c][q * tan + i] *= std::exp(-t * mag * mag);
                }
            eng.box_ifft(ev[c]);
        }
        std::vector<const std::vector<cplx>*> refs;
        for (auto& b : ev) refs.push_back(&b);
        sup = std::max(sup, std::pow(t, 0.5 * alpha) * eng.box_lp_multi(refs, p));
    }
    return sup;
}

ProductCheck product_estimate_check(const ScalarField& f1, const ScalarField& f2, double beta,
                                    double p, double s1, double r1, double s2, double r2) {
    if (!(beta > 0.0)) throw std::invalid_argument("product_estimate_check: beta must be positive");
    auto holder_ok = [](double r, double s, double p_) {
        return std::fabs(1.0 / r + 1.0 / s - 1.0 / p_) < 1e-9;
    };
    if (!holder_ok(r1, s1, p) || !holder_ok(r2, s2, p))
        throw std::invalid_argument("product_estimate_check: exponent relation 1/r_i + 1/s_i = 1/p violated");

    ScalarField prod(f1.grid());
    for (std::size_t i = 0; i < prod.size(); ++i)
        prod.data()[i] = f1.data()[i] * f2.data()[i];

    const auto inf = std::numeric_limits<double>::infinity();
    ProductCheck out{};
    out.lhs = besov_norm(prod, {beta, p, inf}).value;
    out.rhs = besov_norm(f1, {beta, s1, inf}).value * lp_norm(f2, r1) +
              lp_norm(f1, s2) * besov_norm(f2, {beta, r2, inf}).value;
    return out;
}

std::pair<double, double> embedding_check(const FieldBase& f, double p, double p0) {
    if (!(p < p0)) throw std::invalid_argument("embedding_check: requires p < p0");
    const double n = double(f.grid().dim());
    const auto inf = std::numeric_limits<double>::infinity();
    double a = besov_norm(f, {-1.0 + n / p, p, inf}).value;
    double b = besov_norm(f, {-1.0 + n / p0, p0, inf}).value;
    return {a, b};
}

double sup_besov_norm(const Trajectory& traj, const BesovParams& params, bool* truncation_flag) {
    double sup = 0.0;
    bool flag = false;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        NormReport r = besov_norm(traj[k], params);
        sup = std::max(sup, r.value);
        flag = flag || r.truncation_flag;
    }
    if (truncation_flag) *truncation_flag = flag;
    return sup;
}

}  // namespace nslab
