#pragma once

// Discrete Fourier transforms in the paper's conventions, sampled dyadic
// windows psi_n^(D), Fourier multipliers, and Littlewood-Paley blocks.
//
// Forward transform: F(xi_k) = sum_j e^{-i x_j xi_k} f(x_j) (L/N)^d
// Inverse:          f(x_j) = (2 pi)^{-d} sum_k e^{i x_j xi_k} F(xi_k) (2 pi / L)^d
// The x-lattice is centered (x = -L/2 + j h), which shows up as the
// (-1)^k checkerboard sign below.

#include <algorithm>
#include <span>

#include "aniso/chi.hpp"
#include "aniso/fft.hpp"
#include "aniso/grid.hpp"

namespace aniso {

// psi_n^(D) as a radial profile: psi_0 = chi(r), psi_n = chi(2^-n r) - chi(2^-n+1 r).
inline double dyadic_symbol(int n, double r) {
    if (n == 0) return chi(r);
    return chi(std::ldexp(r, -n)) - chi(std::ldexp(r, -n + 1));
}

struct SpectralWindow {
    int band = 0;         // n
    int ambient_dim = 1;  // D
    GridSpec spec;        // frequency lattice geometry (N, L taken from here)
    std::vector<double> values;  // sampled on the D-dimensional frequency lattice

    std::size_t size() const {
        std::size_t s = 1;
        for (int a = 0; a < ambient_dim; ++a) s *= static_cast<std::size_t>(spec.N);
        return s;
    }
};

// Sample psi_n^(D) on the D-dimensional frequency lattice of `spec`.
// D may be the ambient dimension or the chart dimension d_s.
inline SpectralWindow make_dyadic_window(int n, int D, const GridSpec& spec) {
    if (n < 0 || n > spec.n_max)
        throw std::invalid_argument("make_dyadic_window: band outside [0, n_max]");
    if (D < 1 || D > spec.d)
        throw std::invalid_argument("make_dyadic_window: bad ambient dimension");
    SpectralWindow w;
    w.band = n;
    w.ambient_dim = D;
    w.spec = spec;
    w.values.resize(w.size());
    std::vector<int> idx(D);
    for (std::size_t i = 0; i < w.values.size(); ++i) {
        std::size_t rest = i;
        double s = 0.0;
        for (int a = D - 1; a >= 0; --a) {
            const double v = spec.xi(static_cast<int>(rest % spec.N));
            s += v * v;
            rest /= spec.N;
        }
        w.values[i] = dyadic_symbol(n, std::sqrt(s));
    }
    return w;
}

namespace detail {

// parity of the sum of per-axis lattice indices
inline int index_parity(const GridSpec& g, std::size_t idx) {
    int s = 0;
    std::size_t rest = idx;
    for (int a = 0; a < g.d; ++a) {
        s += static_cast<int>(rest % g.N);
        rest /= g.N;
    }
    return s & 1;
}

// Multiply by (-1)^{k_1 + ... + k_d} in place.
inline void checkerboard(const GridSpec& g, std::vector<cplx>& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (index_parity(g, i)) v[i] = -v[i];
}

}  // namespace detail

inline SpectrumFunction dft_forward(const GridFunction& f) {
    if (!all_finite(f)) throw std::invalid_argument("dft_forward: non-finite values");
    SpectrumFunction out;
    out.spec = f.spec;
    out.coeffs = f.values;
    const GridSpec& g = f.spec;
    for (int axis = 0; axis < g.d; ++axis)
        detail::fft_axis(out.coeffs.data(), g.N, g.d, axis, -1);
    detail::checkerboard(g, out.coeffs);
    const double cell = std::pow(g.h(), g.d);
    for (cplx& c : out.coeffs) c *= cell;
    return out;
}

inline GridFunction dft_inverse(const SpectrumFunction& F) {
    GridFunction out(F.spec);
    out.values = F.coeffs;
    const GridSpec& g = F.spec;
    detail::checkerboard(g, out.values);
    for (int axis = 0; axis < g.d; ++axis)
        detail::fft_axis(out.values.data(), g.N, g.d, axis, +1);
    const double scale = 1.0 / std::pow(g.L, g.d);
    for (cplx& v : out.values) v *= scale;
    return out;
}

// a^{Op} f = F^{-1}( a . F f ) for a symbol sampled on f's frequency lattice.
inline GridFunction apply_multiplier(std::span<const double> symbol, const GridFunction& f) {
    if (symbol.size() != f.spec.size())
        throw std::invalid_argument("apply_multiplier: symbol lattice mismatch");
    for (double s : symbol)
        if (!std::isfinite(s)) throw std::invalid_argument("apply_multiplier: non-finite symbol");
    SpectrumFunction F = dft_forward(f);
    for (std::size_t i = 0; i < F.coeffs.size(); ++i) F.coeffs[i] *= symbol[i];
    return dft_inverse(F);
}

inline GridFunction apply_multiplier(const SpectralWindow& w, const GridFunction& f) {
    if (w.ambient_dim != f.spec.d || !(w.spec == f.spec))
        throw std::invalid_argument("apply_multiplier: window lattice mismatch");
    return apply_multiplier(std::span<const double>(w.values), f);
}

namespace detail {
// Multiply a spectrum by psi_n(|xi|) in place; returns false if the band has
// no lattice support (coarse lattices can leave low bands empty).
inline bool scale_by_band(SpectrumFunction& F, int n) {
    bool any = false;
    const GridSpec& g = F.spec;
    for (std::size_t i = 0; i < F.coeffs.size(); ++i) {
        const double s = dyadic_symbol(n, g.xi_norm(i));
        F.coeffs[i] *= s;
        if (s != 0.0) any = true;
    }
    return any;
}
}  // namespace detail

// S_n f. S_{-1} is identically zero.
inline GridFunction lp_block(int n, const GridFunction& f) {
    if (n == -1) return GridFunction(f.spec);
    if (n < -1 || n > f.spec.n_max)
        throw std::invalid_argument("lp_block: band outside [-1, n_max]");
    SpectrumFunction F = dft_forward(f);
    detail::scale_by_band(F, n);
    return dft_inverse(F);
}

// S^j f = sum_{k=0}^{j} S_k f; spectrum supported in |xi| <= 2^{j+1}.
inline GridFunction lp_partial_sum(int j, const GridFunction& f) {
    if (j < 0 || j > f.spec.n_max)
        throw std::invalid_argument("lp_partial_sum: band outside [0, n_max]");
    SpectrumFunction F = dft_forward(f);
    const GridSpec& g = F.spec;
    for (std::size_t i = 0; i < F.coeffs.size(); ++i)
        F.coeffs[i] *= chi(std::ldexp(g.xi_norm(i), -j));  // telescoped sum
    return dft_inverse(F);
}

// Spectral energy fraction of F outside the set given by `inside`.
template <class Pred>
inline double energy_fraction_outside(const SpectrumFunction& F, Pred inside) {
    double tot = 0.0, out = 0.0;
    for (std::size_t i = 0; i < F.coeffs.size(); ++i) {
        const double e = std::norm(F.coeffs[i]);
        tot += e;
        if (!inside(F.spec.xi_norm(i))) out += e;
    }
    return tot > 0.0 ? out / tot : 0.0;
}

}  // namespace aniso
