#include <doctest.h>

#include <cmath>
#include <limits>

#include "nslab/besov.hpp"
#include "nslab/filterbank.hpp"
#include "nslab/multiplier.hpp"
#include "nslab/ops.hpp"
#include "nslab/rng.hpp"
#include "nslab/scenario.hpp"

using namespace nslab;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
const double kInf = std::numeric_limits<double>::infinity();
}  // namespace

TEST_CASE("filter bank: partition of unity and fat-filter structure") {
    HalfSpaceGrid g(2, 128, 96, 2.0 * kPi, 2.0 * kPi);
    // resolvable xi range with margin one band on each side
    for (double r = std::pow(2.0, g.j_min() - 1); r <= std::pow(2.0, g.j_max() + 1); r *= 1.0371) {
        double sum = 0.0;
        for (int j = g.j_min() - 3; j <= g.j_max() + 3; ++j) sum += DyadicFilterBank::phi_hat(j, r);
        CHECK(std::fabs(sum - 1.0) <= 1e-12);
    }
    // support and plateau of the fat filter
    CHECK(DyadicFilterBank::fat_hat(3, std::pow(2.0, 3.0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(DyadicFilterBank::fat_hat(3, std::pow(2.0, 2.0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(DyadicFilterBank::fat_hat(3, std::pow(2.0, 4.0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(DyadicFilterBank::fat_hat(3, std::pow(2.0, 0.99)) == 0.0);
    CHECK(DyadicFilterBank::fat_hat(3, std::pow(2.0, 5.01)) == 0.0);
}

TEST_CASE("dyadic_project: zero data, band reconstruction, near-orthogonality") {
    HalfSpaceGrid g(2, 64, 48, 2.0 * kPi, 2.0 * kPi);
    ScalarField zero(g);
    CHECK(dyadic_project(zero, 2).lp(2.0) == 0.0);
    CHECK_THROWS(dyadic_project(zero, g.j_max() + 1));

    ScalarField band = scalar_band_sample(g, 3, 9);
    // the zero extension of half-space data is never band limited, so the
    // projections are compared against the annulus-filtered extension: the
    // pieces must add up to it exactly (partition of unity in the algebra)
    SpectralEngine eng(g);
    auto ref = eng.box_extend(band.data(), ReflectionKind::None);
    eng.box_fft(ref);
    for (std::size_t m = 0; m < eng.doubled_size(); ++m)
        for (std::size_t i = 0; i < eng.tan(); ++i) {
            double w = 0.0;
            for (int j = g.j_min(); j <= g.j_max(); ++j)
                w += DyadicFilterBank::phi_hat(j, eng.box_mode_mag(m, i));
            ref[m * eng.tan() + i] *= w;
        }
    eng.box_ifft(ref);
    std::vector<cplx> sum(ref.size(), cplx(0.0, 0.0));
    for (int j = g.j_min(); j <= g.j_max(); ++j) {
        auto piece = dyadic_project(band, j);
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += piece.box()[i];
    }
    double err = 0.0, scale = band.max_abs();
    for (std::size_t i = 0; i < sum.size(); ++i)
        err = std::max(err, std::abs(sum[i] - ref[i]));
    CHECK(err <= 1e-11 * scale);

    // near-orthogonality against the resolvable-annulus energy
    ScalarField f(g);
    for (int j = 2; j <= 3; ++j) f.axpy(1.0, scalar_band_sample(g, j, 100 + j));
    double total2 = 0.0;
    for (int j = g.j_min(); j <= g.j_max(); ++j) {
        double b = dyadic_project(f, j).lp(2.0);
        total2 += b * b;
    }
    auto fref = eng.box_extend(f.data(), ReflectionKind::None);
    eng.box_fft(fref);
    for (std::size_t m = 0; m < eng.doubled_size(); ++m)
        for (std::size_t i = 0; i < eng.tan(); ++i) {
            double w = 0.0;
            for (int j = g.j_min(); j <= g.j_max(); ++j)
                w += DyadicFilterBank::phi_hat(j, eng.box_mode_mag(m, i));
            fref[m * eng.tan() + i] *= w;
        }
    eng.box_ifft(fref);
    double refn = eng.box_lp(fref, 2.0);
    CHECK(std::fabs(total2 - refn * refn) <= 0.05 * refn * refn);
}

TEST_CASE("besov_norm: single band collapse, homogeneity, q monotonicity") {
    HalfSpaceGrid g(2, 64, 48, 2.0 * kPi, 2.0 * kPi);
    ScalarField band = scalar_band_sample(g, 3, 21);
    const double s = -0.7, p = 2.0;
    NormReport rep = besov_norm(band, {s, p, kInf});
    // reference: 2^{js} times the L^p size of the zero extension
    SpectralEngine eng(g);
    double zext = eng.box_lp(eng.box_extend(band.data(), ReflectionKind::None), p);
    CHECK(rep.argmax_band == 3);
    CHECK(rep.value == doctest::Approx(std::pow(2.0, 3.0 * s) * zext).epsilon(0.03));
    CHECK(!rep.truncation_flag);

    ScalarField scaled = band;
    scaled.scale(-2.5);
    CHECK(besov_norm(scaled, {s, p, kInf}).value ==
          doctest::Approx(2.5 * rep.value).epsilon(1e-12));

    NormReport l1 = besov_norm(band, {s, p, 1.0});
    CHECK(l1.value >= rep.value - 1e-14);
}

TEST_CASE("besov_norm flags unresolved boundary bands") {
    HalfSpaceGrid g(2, 64, 48, 2.0 * kPi, 2.0 * kPi);
    ScalarField low = scalar_band_sample(g, g.j_min(), 33);
    CHECK(besov_norm(low, {-0.5, 2.0, kInf}).truncation_flag);
}

TEST_CASE("heat characterization is band-equivalent to the dyadic norm") {
    HalfSpaceGrid g(2, 128, 96, 2.0 * kPi, 2.0 * kPi);
    TimeGrid times(1e-5, std::pow(2.0, 0.5), 40);
    const double alpha = 0.8, p = 2.0;
    double lo = 1e300, hi = 0.0;
    for (int j = 1; j <= 4; ++j) {
        ScalarField band = scalar_band_sample(g, j, 40 + j);
        double hc = heat_characterization(band, alpha, p, times);
        double bn = besov_norm(band, {-alpha, p, kInf}).value;
        double ratio = hc / bn;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    // a single equivalence constant covers the sweep
    CHECK(hi / lo <= 1.6);
}

TEST_CASE("two-band datum: the sup sits at the lower band's scale") {
    HalfSpaceGrid g(2, 128, 96, 2.0 * kPi, 2.0 * kPi);
    ScalarField f = scalar_band_sample(g, 1, 7);
    ScalarField high = scalar_band_sample(g, 5, 8);
    high.scale(lp_norm(f, 2.0) / lp_norm(high, 2.0));
    f.axpy(1.0, high);
    NormReport rep = besov_norm(f, {-1.0, 2.0, kInf});
    CHECK(rep.argmax_band <= 2);  // negative s favors the low band
}

TEST_CASE("product estimate: constant factor, band data, exponent validation") {
    HalfSpaceGrid g(2, 64, 48, 2.0 * kPi, 2.0 * kPi);
    ScalarField f1 = scalar_band_sample(g, 2, 3);
    ScalarField ones(g);
    ones.fill(1.0);
    CHECK_THROWS(product_estimate_check(f1, ones, 0.5, 2.0, 3.0, 3.0, 4.0, 4.0));

    // f2 = 1: lhs = ||f1||_B, rhs >= ||f1||_B * ||1||_r1 with box volume ~ O(1)
    ProductCheck pc = product_estimate_check(f1, ones, 0.5, 2.0, 4.0, 4.0, 4.0, 4.0);
    CHECK(pc.lhs <= 1.05 * pc.rhs);

    ProductCheck pb = product_estimate_check(f1, f1, 0.5, 2.0, 4.0, 4.0, 4.0, 4.0);
    CHECK(pb.lhs <= 2.0 * pb.rhs);
    CHECK(pb.lhs > 0.0);
}

TEST_CASE("embedding: critical norms and band-independent ratio") {
    HalfSpaceGrid g(2, 128, 96, 2.0 * kPi, 2.0 * kPi);
    ScalarField zero(g);
    auto [z0, z1] = embedding_check(zero, 4.0 / 3.0, 4.0);
    CHECK(z0 == 0.0);
    CHECK(z1 == 0.0);

    // critical scaling: f_lambda = lambda f(lambda x) on the lambda-rescaled
    // grid leaves both critical norms fixed, so the ratio is j-independent
    ScalarField base = scalar_band_sample(g, 2, 60);
    double lo = 1e300, hi = 0.0;
    for (double lam : {1.0, 2.0, 4.0}) {
        HalfSpaceGrid gs = g.rescaled(lam);
        ScalarField fs(gs);
        for (std::size_t i = 0; i < base.size(); ++i) fs.data()[i] = lam * base.data()[i];
        auto [np, np0] = embedding_check(fs, 4.0 / 3.0, 4.0);
        double r = np0 / np;
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    CHECK((hi - lo) / hi <= 0.15);
}

TEST_CASE("critical-scaling invariance under grid rescaling") {
    // f_lambda(x) = lambda f(lambda x) at s = -1 + n/p leaves the norm fixed
    HalfSpaceGrid g(2, 128, 96, 2.0 * kPi, 2.0 * kPi);
    const double p = 2.0, s = -1.0 + 2.0 / p;
    ScalarField f = scalar_band_sample(g, 2, 77);
    double base = besov_norm(f, {s, p, kInf}).value;
    for (double lam : {2.0, 4.0}) {
        HalfSpaceGrid gs = g.rescaled(lam);
        ScalarField fs(gs);
        for (std::size_t i = 0; i < f.size(); ++i) fs.data()[i] = lam * f.data()[i];
        double scaled = besov_norm(fs, {s, p, kInf}).value;
        CHECK(scaled == doctest::Approx(base).epsilon(0.10));
    }
}

TEST_CASE("multiplier decay: scaling limit and t-doubling") {
    HalfSpaceGrid g(2, 128, 96, 2.0 * kPi, 2.0 * kPi);
    CHECK(fat_band_max(g) == 3);
    // t -> 0: the L1 size approaches the band-filter kernel's, j-independent
    // up to sampling of the coarsest band
    std::vector<double> l1s;
    for (int j : {2, 3}) l1s.push_back(multiplier_decay_check(g, j, 1e-9 / std::pow(4.0, j)).measured);
    CHECK(std::fabs(l1s[0] - l1s[1]) <= 0.12 * l1s[0]);

    // fixed j, doubling t: the measured ratio tracks the bound ratio in the
    // mid range; past s ~ 8 the filter's inner tail sets a slower rate and
    // only the single fitted constant of the acceptance check applies
    const int j = 3;
    for (double tau : {1.0, 2.0, 4.0}) {
        double t = tau / std::pow(4.0, j);
        auto a = multiplier_decay_check(g, j, t);
        auto b = multiplier_decay_check(g, j, 2.0 * t);
        CHECK(b.measured / a.measured <= 1.05 * (b.bound / a.bound));
    }
}
