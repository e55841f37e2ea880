#pragma once

// Periodic-box discretization of R^d. The box [-L/2, L/2)^d carries an
// N^d spatial lattice; data of interest is compactly supported in the ball
// of radius K_rad <= L/4 so periodic wraparound stays spectrally small.
// Frequencies live on xi = 2 pi k / L, k in {-N/2, ..., N/2-1}^d.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "aniso/fft.hpp"

namespace aniso {

struct GridSpec {
    int d = 1;        // ambient dimension
    int d_s = 1;      // stable (leaf) dimension, d_s + d_u = d
    int d_u = 0;
    int N = 0;        // points per axis, power of two
    double L = 0.0;   // box side length
    double K_rad = 0.0;  // radius of the compact support ball
    int n_max = 0;    // largest n with 2^{n+1} <= pi N / (2 L)

    double h() const { return L / N; }
    double dxi() const { return 2.0 * std::numbers::pi / L; }
    // Nyquist-type guard: dyadic bands are kept below pi N / (2 L) so that
    // products of band-limited data stay representable.
    double guard() const { return std::numbers::pi * N / (2.0 * L); }

    std::size_t size() const {
        std::size_t s = 1;
        for (int a = 0; a < d; ++a) s *= static_cast<std::size_t>(N);
        return s;
    }

    // signed frequency index for lattice index i in [0, N)
    int k_signed(int i) const { return i < N / 2 ? i : i - N; }
    double xi(int i) const { return dxi() * k_signed(i); }
    double x(int i) const { return -L / 2.0 + h() * i; }

    // decompose a flat row-major index into per-axis indices
    void unflatten(std::size_t idx, int* out) const {
        for (int a = d - 1; a >= 0; --a) {
            out[a] = static_cast<int>(idx % N);
            idx /= N;
        }
    }

    double xi_norm(std::size_t idx) const {
        double s = 0.0;
        for (int a = d - 1; a >= 0; --a) {
            const double v = xi(static_cast<int>(idx % N));
            s += v * v;
            idx /= N;
        }
        return std::sqrt(s);
    }

    double x_norm2(std::size_t idx) const {
        double s = 0.0;
        for (int a = d - 1; a >= 0; --a) {
            const double v = x(static_cast<int>(idx % N));
            s += v * v;
            idx /= N;
        }
        return s;
    }

    bool operator==(const GridSpec& o) const {
        return d == o.d && d_s == o.d_s && d_u == o.d_u && N == o.N && L == o.L &&
               K_rad == o.K_rad;
    }
};

inline GridSpec make_grid(int d, int d_s, int N, double L, double K_rad) {
    if (d < 1 || d > 3) throw std::invalid_argument("make_grid: d must be in [1,3]");
    if (d_s < 0 || d_s > d) throw std::invalid_argument("make_grid: invalid split");
    if (N < 8 || !detail::is_pow2(static_cast<std::size_t>(N)))
        throw std::invalid_argument("make_grid: N must be a power of two (>= 8)");
    if (!(L > 0.0)) throw std::invalid_argument("make_grid: L must be positive");
    if (!(K_rad > 0.0) || K_rad > L / 4.0 + 1e-12 * L)
        throw std::invalid_argument("make_grid: K_rad must satisfy 0 < K_rad <= L/4");
    GridSpec g;
    g.d = d;
    g.d_s = d_s;
    g.d_u = d - d_s;
    g.N = N;
    g.L = L;
    g.K_rad = K_rad;
    int n = 0;
    while (std::ldexp(1.0, n + 2) <= g.guard()) ++n;
    if (std::ldexp(1.0, n + 1) > g.guard())
        throw std::invalid_argument("make_grid: no dyadic band fits below the guard");
    g.n_max = n;
    // at least 6 usable bands: 2^6 <= pi N / (2 L), i.e. n_max >= 5
    if (g.n_max < 5)
        throw std::invalid_argument(
            "make_grid: fewer than 6 usable dyadic bands (need 2^6 <= pi N / (2 L))");
    return g;
}

struct GridFunction {
    GridSpec spec;
    std::vector<cplx> values;  // row-major over the spatial lattice

    GridFunction() = default;
    explicit GridFunction(const GridSpec& s) : spec(s), values(s.size()) {}
    GridFunction(const GridSpec& s, std::vector<cplx> v) : spec(s), values(std::move(v)) {
        if (values.size() != spec.size())
            throw std::invalid_argument("GridFunction: value count does not match lattice");
    }
};

struct SpectrumFunction {
    GridSpec spec;
    std::vector<cplx> coeffs;  // row-major over the frequency lattice (FFT order)

    SpectrumFunction() = default;
    explicit SpectrumFunction(const GridSpec& s) : spec(s), coeffs(s.size()) {}
};

inline void require_same_spec(const GridSpec& a, const GridSpec& b, const char* who) {
    if (!(a == b)) throw std::invalid_argument(std::string(who) + ": grid spec mismatch");
}

// Largest |value| outside the support ball of radius K_rad.
inline double support_leak(const GridFunction& f) {
    const GridSpec& g = f.spec;
    const double r2 = g.K_rad * g.K_rad;
    double leak = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        if (g.x_norm2(i) > r2) leak = std::max(leak, std::abs(f.values[i]));
    }
    return leak;
}

inline double max_abs(const GridFunction& f) {
    double m = 0.0;
    for (const cplx& v : f.values) m = std::max(m, std::abs(v));
    return m;
}

inline bool all_finite(const GridFunction& f) {
    for (const cplx& v : f.values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

// Shift f by an integer number of lattice cells per axis (periodic).
inline GridFunction lattice_shift(const GridFunction& f, const std::vector<int>& cells) {
    if (static_cast<int>(cells.size()) != f.spec.d)
        throw std::invalid_argument("lattice_shift: need one offset per axis");
    const GridSpec& g = f.spec;
    GridFunction out(g);
    std::vector<int> idx(g.d);
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        g.unflatten(i, idx.data());
        std::size_t src = 0;
        for (int a = 0; a < g.d; ++a) {
            int j = idx[a] - cells[a];
            j %= g.N;
            if (j < 0) j += g.N;
            src = src * g.N + static_cast<std::size_t>(j);
        }
        out.values[i] = f.values[src];
    }
    return out;
}

}  // namespace aniso
