#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "nslab/fft.hpp"
#include "nslab/grid.hpp"
#include "nslab/rng.hpp"
#include "nslab/spectral.hpp"

using namespace nslab;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::vector<cplx> direct_dft(const std::vector<cplx>& x) {
    const std::size_t n = x.size();
    std::vector<cplx> out(n, cplx(0.0, 0.0));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j)
            out[k] += x[j] * std::polar(1.0, -2.0 * kPi * double(j * k % n) / double(n));
    return out;
}

}  // namespace

TEST_CASE("fft matches the direct transform on mixed sizes") {
    Rng rng(42);
    for (std::size_t n : {8u, 12u, 13u, 24u, 48u, 64u, 96u, 100u, 192u, 288u}) {
        std::vector<cplx> x(n);
        for (auto& z : x) z = cplx(rng.gaussian(), rng.gaussian());
        auto ref = direct_dft(x);
        auto plan = fft_plan(n);
        std::vector<cplx> y = x;
        plan->forward(y.data());
        double err = 0.0, scale = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            err = std::max(err, std::abs(y[k] - ref[k]));
            scale = std::max(scale, std::abs(ref[k]));
        }
        CHECK(err < 1e-10 * scale);
        plan->inverse(y.data());
        double round = 0.0;
        for (std::size_t k = 0; k < n; ++k) round = std::max(round, std::abs(y[k] - x[k]));
        CHECK(round < 1e-12);
    }
}

TEST_CASE("tangential derivative is exact on resolved trigonometric data") {
    HalfSpaceGrid g(2, 32, 16, 2.0 * kPi, 2.0 * kPi);
    SpectralEngine eng(g);
    std::vector<double> f(g.rows() * g.tan_points()), df(f.size());
    for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t i = 0; i < g.tan_points(); ++i)
            f[r * g.tan_points() + i] = std::sin(3.0 * double(i) * g.tan_spacing());
    eng.tangential_derivative(f.data(), df.data(), 0);
    double err = 0.0;
    for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t i = 0; i < g.tan_points(); ++i) {
            double x = double(i) * g.tan_spacing();
            err = std::max(err, std::fabs(df[r * g.tan_points() + i] - 3.0 * std::cos(3.0 * x)));
        }
    CHECK(err < 1e-11);
}

TEST_CASE("doubled-profile transforms invert and odd extension kills wall row") {
    HalfSpaceGrid g(2, 16, 12, 2.0 * kPi, 2.0 * kPi);
    SpectralEngine eng(g);
    Rng rng(7);
    std::vector<cplx> prof(g.rows());
    for (auto& z : prof) z = cplx(rng.gaussian(), 0.0);
    std::vector<cplx> dbl(eng.doubled_size());
    eng.extend_profile(prof.data(), ReflectionKind::Odd, dbl.data());
    CHECK(std::abs(dbl[eng.upper_index(0)]) == 0.0);
    eng.profile_fft(dbl.data());
    eng.profile_ifft(dbl.data());
    std::vector<cplx> back(g.rows());
    eng.restrict_profile(dbl.data(), back.data(), false);
    for (std::size_t r = 1; r + 1 < g.rows(); ++r)
        CHECK(std::abs(back[r] - prof[r]) < 1e-12);
}

TEST_CASE("box transform round-trips") {
    HalfSpaceGrid g(2, 16, 12, 2.0 * kPi, 2.0 * kPi);
    SpectralEngine eng(g);
    Rng rng(3);
    std::vector<double> comp(g.rows() * g.tan_points());
    for (auto& v : comp) v = rng.gaussian();
    auto box = eng.box_extend(comp.data(), ReflectionKind::None);
    auto phys = box;
    eng.box_fft(box);
    eng.box_ifft(box);
    double err = 0.0;
    for (std::size_t i = 0; i < box.size(); ++i) err = std::max(err, std::abs(box[i] - phys[i]));
    CHECK(err < 1e-11);
}
