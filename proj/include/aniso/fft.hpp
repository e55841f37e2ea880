#pragma once

// Radix-2 complex FFT with cached twiddle tables, plus helpers to run the
// transform along one axis of a dense row-major multi-dimensional array.
// Grid sizes are validated powers of two upstream, so no general-length
// fallback is needed.

#include <complex>
#include <cstddef>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace aniso {

using cplx = std::complex<double>;

namespace detail {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

struct TwiddleTable {
    // e^{-2 pi i k / n} for k < n/2
    std::vector<cplx> w;
};

inline std::shared_ptr<const TwiddleTable> twiddles(std::size_t n) {
    static std::mutex mtx;
    static std::unordered_map<std::size_t, std::shared_ptr<const TwiddleTable>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    auto tab = std::make_shared<TwiddleTable>();
    tab->w.resize(n / 2);
    const double step = -2.0 * 3.14159265358979323846 / static_cast<double>(n);
    for (std::size_t k = 0; k < n / 2; ++k) {
        const double a = step * static_cast<double>(k);
        tab->w[k] = {std::cos(a), std::sin(a)};
    }
    cache.emplace(n, tab);
    return cache.at(n);
}

// In-place forward (sign=-1) or inverse (sign=+1) unnormalized FFT.
inline void fft_pow2(cplx* data, std::size_t n, int sign) {
    if (n <= 1) return;
    if (!is_pow2(n)) throw std::invalid_argument("fft: length must be a power of two");
    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }
    auto tab = twiddles(n);
    const auto& w = tab->w;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx tw = w[k * stride];
                if (sign > 0) tw = std::conj(tw);
                const cplx u = data[i + k];
                const cplx v = data[i + k + len / 2] * tw;
                data[i + k] = u + v;
                data[i + k + len / 2] = u - v;
            }
        }
    }
}

// Apply the 1-d transform along `axis` of a row-major array with extents
// `n` per axis and `dim` axes. Unnormalized.
inline void fft_axis(cplx* data, std::size_t n, int dim, int axis, int sign) {
    std::size_t total = 1;
    for (int a = 0; a < dim; ++a) total *= n;
    std::size_t stride = 1;
    for (int a = dim - 1; a > axis; --a) stride *= n;
    const std::size_t block = stride * n;
    std::vector<cplx> buf(n);
    for (std::size_t base = 0; base < total; base += block) {
        for (std::size_t off = 0; off < stride; ++off) {
            cplx* p = data + base + off;
            for (std::size_t k = 0; k < n; ++k) buf[k] = p[k * stride];
            fft_pow2(buf.data(), n, sign);
            for (std::size_t k = 0; k < n; ++k) p[k * stride] = buf[k];
        }
    }
}

}  // namespace detail

}  // namespace aniso
