#pragma once

// Deterministic test-function corpora. Every member is compactly supported
// in the ball of radius K_rad (a C-infinity plateau envelope enforces
// this exactly up to the mollifier tails). Kinds:
//   - gaussian bumps (wide/narrow, centered on or off the interface)
//   - random band-limited fields (enveloped, then hard-projected in band)
//   - wave packets (fixed carriers and grid-scaled carriers)
//   - plane-wave mixtures (flat and square-profile amplitude laws)
//
// With `reference_n_max` set, band and carrier parameters are taken from
// that band budget instead of the grid's own, so the same continuum
// functions are sampled at every resolution of a sweep.

#include <string>

#include "aniso/grid.hpp"
#include "aniso/rng.hpp"
#include "aniso/spectral.hpp"

namespace aniso {

struct CorpusConfig {
    std::uint64_t seed = 1;
    int reference_n_max = 0;  // 0 = use the grid's n_max
    bool include_scaled = true;  // grid-scaled packet / growing-band members
};

struct CorpusMember {
    std::string name;
    GridFunction f;
};

namespace detail {

// radial plateau envelope: 1 for |x| <= 0.7 K, 0 for |x| >= K
inline double plateau(const GridSpec& g, std::size_t idx) {
    const double r = std::sqrt(g.x_norm2(idx));
    return smooth_step((g.K_rad - r) / (0.3 * g.K_rad));
}

inline GridFunction envelope(const GridSpec& g) {
    GridFunction e(g);
    for (std::size_t i = 0; i < e.values.size(); ++i) e.values[i] = plateau(g, i);
    return e;
}

inline void normalize_sup(GridFunction& f) {
    const double m = max_abs(f);
    if (m > 0.0)
        for (cplx& v : f.values) v /= m;
}

// zero every coefficient with |xi| > cap (hard projection)
inline void project_band(GridFunction& f, double cap) {
    SpectrumFunction F = dft_forward(f);
    for (std::size_t i = 0; i < F.coeffs.size(); ++i)
        if (F.spec.xi_norm(i) > cap) F.coeffs[i] = 0.0;
    f = dft_inverse(F);
}

// Walk signed frequency indices in the fixed order 0, +1, -1, +2, -2, ...
// so random draws attach to frequencies, not lattice slots: sweeps with a
// pinned reference band budget then sample the same continuum function at
// every resolution.
template <class Fn>
inline void freq_walk(int k_cap, Fn&& fn) {
    fn(0);
    for (int k = 1; k <= k_cap; ++k) {
        fn(k);
        fn(-k);
    }
}

inline int lattice_index_of(const GridSpec& g, int k_signed) {
    if (k_signed > g.N / 2 - 1 || k_signed < -g.N / 2) return -1;
    return k_signed >= 0 ? k_signed : k_signed + g.N;
}

}  // namespace detail

// 1-d corpus used by the Strichartz scan and the lemma suite.
inline std::vector<CorpusMember> make_corpus_1d(const GridSpec& g, const CorpusConfig& cfg) {
    if (g.d != 1) throw std::invalid_argument("make_corpus_1d: needs d = 1");
    const int nm = cfg.reference_n_max > 0 ? cfg.reference_n_max : g.n_max;
    const double nyq = cfg.reference_n_max > 0
                           ? 4.0 * std::ldexp(1.0, cfg.reference_n_max)  // guard*2 of the reference grid
                           : std::numbers::pi * g.N / g.L;
    Rng rng(cfg.seed);
    const double K = g.K_rad, L = g.L;
    std::vector<CorpusMember> out;
    GridFunction env = detail::envelope(g);
    auto gauss = [&](const std::string& name, double center, double width) {
        GridFunction f(g);
        for (int i = 0; i < g.N; ++i) {
            const double x = g.x(i);
            f.values[i] = std::exp(-(x - center) * (x - center) / (2.0 * width * width)) *
                          env.values[i];
        }
        out.push_back({name, std::move(f)});
    };
    gauss("bump_wide", 0.0, K / 1.6);
    gauss("bump_narrow", 0.0, L / 128.0);
    gauss("bump_interior", K / 3.0, K / 6.0);

    {  // random band-limited field
        const double cap = std::ldexp(1.0, nm - 2);
        const int kcap = static_cast<int>(std::floor(cap / g.dxi()));
        SpectrumFunction spec;
        spec.spec = g;
        spec.coeffs.assign(g.size(), cplx{0.0, 0.0});
        detail::freq_walk(kcap, [&](int k) {
            const double re = rng.normal(), im = rng.normal();
            const int i = detail::lattice_index_of(g, k);
            if (i >= 0) spec.coeffs[i] = cplx{re, im};
        });
        GridFunction f = dft_inverse(spec);
        detail::normalize_sup(f);
        for (int i = 0; i < g.N; ++i) f.values[i] *= env.values[i];
        detail::project_band(f, g.guard());
        out.push_back({"randbl", std::move(f)});
    }
    if (cfg.include_scaled) {  // grid-scaled packet at the interface
        const double eta = 0.5 * nyq;
        const double w = 4.0 / eta;
        GridFunction f(g);
        for (int i = 0; i < g.N; ++i) {
            const double x = g.x(i);
            f.values[i] = cplx{std::cos(eta * x), std::sin(eta * x)} *
                          std::exp(-x * x / (2.0 * w * w)) * env.values[i];
        }
        out.push_back({"packet_scaled", std::move(f)});
    }
    {  // fixed-carrier packet
        GridFunction f(g);
        const double w = K / 6.0;
        for (int i = 0; i < g.N; ++i) {
            const double x = g.x(i);
            f.values[i] = cplx{std::cos(8.0 * x), std::sin(8.0 * x)} *
                          std::exp(-x * x / (2.0 * w * w)) * env.values[i];
        }
        out.push_back({"packet8", std::move(f)});
    }
    {  // square-profile mixture: a_eta = 1/(i eta), |eta| <= 64
        SpectrumFunction spec;
        spec.spec = g;
        spec.coeffs.assign(g.size(), cplx{0.0, 0.0});
        for (int i = 0; i < g.N; ++i) {
            const double xi = g.xi(i);
            if (xi != 0.0 && std::abs(xi) <= 64.0) spec.coeffs[i] = cplx{0.0, -1.0 / xi};
        }
        GridFunction f = dft_inverse(spec);
        detail::normalize_sup(f);
        for (int i = 0; i < g.N; ++i) f.values[i] *= env.values[i];
        out.push_back({"sqmix", std::move(f)});
    }
    return out;
}

// 2-d corpus used by the multiplier scan: bumps, random band-limited field,
// cone-aligned and cone-transverse wave packets, and a flat mixture.
inline std::vector<CorpusMember> make_corpus_2d(const GridSpec& g, const CorpusConfig& cfg) {
    if (g.d != 2) throw std::invalid_argument("make_corpus_2d: needs d = 2");
    const int nm = cfg.reference_n_max > 0 ? cfg.reference_n_max : g.n_max;
    Rng rng(cfg.seed);
    const double K = g.K_rad;
    std::vector<CorpusMember> out;
    GridFunction env = detail::envelope(g);

    auto gauss2 = [&](const std::string& name, double c1, double c2, double width) {
        GridFunction f(g);
        std::size_t i = 0;
        for (int a = 0; a < g.N; ++a)
            for (int b = 0; b < g.N; ++b, ++i) {
                const double x = g.x(a) - c1, y = g.x(b) - c2;
                f.values[i] =
                    std::exp(-(x * x + y * y) / (2.0 * width * width)) * env.values[i];
            }
        out.push_back({name, std::move(f)});
    };
    gauss2("bump_edge", 0.0, 0.0, K / 5.0);
    gauss2("bump_interior", K / 4.0, 0.0, K / 6.0);

    {  // random band-limited
        const double cap = std::ldexp(1.0, nm - 2);
        const int kcap = static_cast<int>(std::floor(cap / g.dxi()));
        SpectrumFunction spec;
        spec.spec = g;
        spec.coeffs.assign(g.size(), cplx{0.0, 0.0});
        detail::freq_walk(kcap, [&](int k1) {
            detail::freq_walk(kcap, [&](int k2) {
                const double re = rng.normal(), im = rng.normal();
                const int i1 = detail::lattice_index_of(g, k1);
                const int i2 = detail::lattice_index_of(g, k2);
                if (i1 >= 0 && i2 >= 0 &&
                    std::hypot(k1 * g.dxi(), k2 * g.dxi()) <= cap)
                    spec.coeffs[static_cast<std::size_t>(i1) * g.N + i2] = cplx{re, im};
            });
        });
        GridFunction f = dft_inverse(spec);
        detail::normalize_sup(f);
        for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] *= env.values[i];
        detail::project_band(f, g.guard());
        out.push_back({"randbl", std::move(f)});
    }
    auto packet = [&](const std::string& name, double e1, double e2) {
        GridFunction f(g);
        const double w = K / 5.0;
        std::size_t i = 0;
        for (int a = 0; a < g.N; ++a)
            for (int b = 0; b < g.N; ++b, ++i) {
                const double x = g.x(a), y = g.x(b);
                const double ph = e1 * x + e2 * y;
                f.values[i] = cplx{std::cos(ph), std::sin(ph)} *
                              std::exp(-(x * x + y * y) / (2.0 * w * w)) * env.values[i];
            }
        out.push_back({name, std::move(f)});
    };
    const double eta = std::ldexp(1.0, nm - 2);
    packet("packet_aligned", 0.0, eta);     // carrier along the cone axis
    packet("packet_transverse", eta, 0.0);  // carrier along the interface normal
    {  // flat mixture, fixed band
        SpectrumFunction spec;
        spec.spec = g;
        spec.coeffs.assign(g.size(), cplx{0.0, 0.0});
        const int kcap = static_cast<int>(std::floor(16.0 / g.dxi()));
        detail::freq_walk(kcap, [&](int k1) {
            detail::freq_walk(kcap, [&](int k2) {
                const double ph = 2.0 * std::numbers::pi * rng.uniform01();
                const int i1 = detail::lattice_index_of(g, k1);
                const int i2 = detail::lattice_index_of(g, k2);
                const double r = std::hypot(k1 * g.dxi(), k2 * g.dxi());
                if (i1 >= 0 && i2 >= 0 && r > 0.0 && r <= 16.0)
                    spec.coeffs[static_cast<std::size_t>(i1) * g.N + i2] =
                        cplx{std::cos(ph), std::sin(ph)};
            });
        });
        GridFunction f = dft_inverse(spec);
        detail::normalize_sup(f);
        for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] *= env.values[i];
        out.push_back({"mix_flat", std::move(f)});
    }
    return out;
}

inline std::vector<CorpusMember> make_corpus(const GridSpec& g, const CorpusConfig& cfg) {
    return g.d == 1 ? make_corpus_1d(g, cfg) : make_corpus_2d(g, cfg);
}

}  // namespace aniso
