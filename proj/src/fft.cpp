#include "nslab/fft.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace nslab {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
    std::size_t m = 1;
    while (m < n) m <<= 1;
    return m;
}

std::size_t odd_factor(std::size_t n) {
    for (std::size_t r : {3u, 5u, 7u})
        if (n % r == 0) return r;
    return 0;
}

bool is_smooth(std::size_t n) {
    for (std::size_t r : {2u, 3u, 5u, 7u})
        while (n % r == 0) n /= r;
    return n == 1;
}
}  // namespace

Fft::Fft(std::size_t n) : n_(n) {
    if (n == 0) throw std::invalid_argument("Fft: size must be positive");
    if (is_pow2(n)) {
        kind_ = Kind::Pow2;
        bitrev_.resize(n);
        std::size_t log2n = 0;
        while ((std::size_t{1} << log2n) < n) ++log2n;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t r = 0;
            for (std::size_t b = 0; b < log2n; ++b) r |= ((i >> b) & 1u) << (log2n - 1 - b);
            bitrev_[i] = r;
        }
        twiddle_.resize(n / 2);
        for (std::size_t k = 0; k < n / 2; ++k)
            twiddle_[k] = std::polar(1.0, -2.0 * kPi * double(k) / double(n));
        return;
    }
    if (is_smooth(n)) {
        // peel odd factors first so the recursion bottoms out in the
        // iterative power-of-two path
        kind_ = Kind::Mixed;
        radix_ = odd_factor(n);
        sub_n_ = n / radix_;
        sub_ = std::make_shared<const Fft>(sub_n_);
        tw_qk_.resize(radix_ * sub_n_);
        for (std::size_t q = 0; q < radix_; ++q)
            for (std::size_t k = 0; k < sub_n_; ++k)
                tw_qk_[q * sub_n_ + k] = std::polar(1.0, -2.0 * kPi * double(q * k) / double(n));
        tw_qs_.resize(radix_ * radix_);
        for (std::size_t q = 0; q < radix_; ++q)
            for (std::size_t s = 0; s < radix_; ++s)
                tw_qs_[q * radix_ + s] =
                    std::polar(1.0, -2.0 * kPi * double((q * s) % radix_) / double(radix_));
        return;
    }
    // Bluestein; the inner size is a power of two so this does not recurse
    kind_ = Kind::Bluestein;
    m_ = next_pow2(2 * n - 1);
    inner_ = std::make_shared<const Fft>(m_);
    chirp_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t k2 = (k * k) % (2 * n);
        chirp_[k] = std::polar(1.0, -kPi * double(k2) / double(n));
    }
    std::vector<cplx> b(m_, cplx{0.0, 0.0});
    b[0] = std::conj(chirp_[0]);
    for (std::size_t k = 1; k < n; ++k) {
        b[k] = std::conj(chirp_[k]);
        b[m_ - k] = std::conj(chirp_[k]);
    }
    inner_->forward(b.data());
    bspec_ = std::move(b);
}

void Fft::pow2_forward(cplx* a) const {
    const std::size_t n = n_;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = bitrev_[i];
        if (j > i) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len >> 1;
        const std::size_t step = n / len;
        for (std::size_t start = 0; start < n; start += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const cplx w = twiddle_[k * step];
                cplx& u = a[start + k];
                cplx& v = a[start + k + half];
                const cplx t = v * w;
                v = u - t;
                u = u + t;
            }
        }
    }
}

void Fft::mixed_forward(cplx* a) const {
    const std::size_t r = radix_, m = sub_n_;
    std::vector<cplx> scratch(n_);
    // decimation in time: residue class q holds x[q + r*j]
    for (std::size_t q = 0; q < r; ++q)
        for (std::size_t j = 0; j < m; ++j) scratch[q * m + j] = a[q + r * j];
    for (std::size_t q = 0; q < r; ++q) sub_->forward(scratch.data() + q * m);
    for (std::size_t k = 0; k < m; ++k) {
        cplx y[7];
        for (std::size_t q = 0; q < r; ++q) y[q] = scratch[q * m + k] * tw_qk_[q * m + k];
        for (std::size_t s = 0; s < r; ++s) {
            cplx acc{0.0, 0.0};
            for (std::size_t q = 0; q < r; ++q) acc += y[q] * tw_qs_[q * r + s];
            a[k + s * m] = acc;
        }
    }
}

void Fft::bluestein_forward(cplx* data) const {
    std::vector<cplx> a(m_, cplx{0.0, 0.0});
    for (std::size_t k = 0; k < n_; ++k) a[k] = data[k] * chirp_[k];
    inner_->forward(a.data());
    for (std::size_t k = 0; k < m_; ++k) a[k] *= bspec_[k];
    for (auto& z : a) z = std::conj(z);
    inner_->forward(a.data());
    const double scale = 1.0 / double(m_);
    for (std::size_t k = 0; k < n_; ++k) data[k] = std::conj(a[k]) * scale * chirp_[k];
}

void Fft::forward(cplx* data) const {
    switch (kind_) {
        case Kind::Pow2: pow2_forward(data); break;
        case Kind::Mixed: mixed_forward(data); break;
        case Kind::Bluestein: bluestein_forward(data); break;
    }
}

void Fft::inverse(cplx* data) const {
    for (std::size_t k = 0; k < n_; ++k) data[k] = std::conj(data[k]);
    forward(data);
    const double scale = 1.0 / double(n_);
    for (std::size_t k = 0; k < n_; ++k) data[k] = std::conj(data[k]) * scale;
}

std::shared_ptr<const Fft> fft_plan(std::size_t n) {
    static std::mutex mu;
    static std::map<std::size_t, std::shared_ptr<const Fft>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    auto plan = std::make_shared<const Fft>(n);
    cache.emplace(n, plan);
    return plan;
}

}  // namespace nslab
