#pragma once

// L_p quadrature, isotropic Besov norms B^s_{p,inf}, Bessel-potential
// Sobolev norms H^t_p, and the Nikol'skij ratio probe.

#include <cmath>
#include <limits>

#include "aniso/spectral.hpp"

namespace aniso {

struct NormParams {
    double p = 2.0;
    double s = -0.4;
    double t = 0.2;
    double r = 3.0;  // smoothness budget, r > 1

    double p_conj() const {
        if (std::isinf(p)) return 1.0;
        return p / (p - 1.0);
    }

    // Theorem hypothesis: p in (1,inf) and max{t-(r-1), -1+1/p} < s < -t < 0.
    bool theorem_admissible() const {
        if (!(p > 1.0) || std::isinf(p)) return false;
        const double lo = std::max(t - (r - 1.0), -1.0 + 1.0 / p);
        return lo < s && s < -t && -t < 0.0;
    }
};

inline void validate_norm_params(const NormParams& np) {
    if (!(np.p > 1.0)) throw std::invalid_argument("NormParams: p must exceed 1");
    if (!(np.r > 1.0)) throw std::invalid_argument("NormParams: r must exceed 1");
}

inline double lp_norm(const GridFunction& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
    if (std::isinf(p)) return max_abs(f);
    const double cell = std::pow(f.spec.h(), f.spec.d);
    double acc = 0.0;
    for (const cplx& v : f.values) acc += std::pow(std::abs(v), p);
    return std::pow(cell * acc, 1.0 / p);
}

struct BesovReport {
    double value = 0.0;
    int argmax_band = -1;
};

// B^s_{p,inf} surrogate: max_{l <= n_max} 2^{l s} ||S_l f||_{L_p}.
inline BesovReport besov_norm_report(const GridFunction& f, double s, double p, double r = 3.0) {
    if (!(p >= 1.0)) throw std::invalid_argument("besov_norm: p must be >= 1");
    if (!(std::abs(s) < r - 1.0))
        throw std::invalid_argument("besov_norm: need |s| < r - 1");
    if (f.spec.n_max < 2) throw std::invalid_argument("besov_norm: band budget exhausted");
    SpectrumFunction F = dft_forward(f);
    BesovReport rep;
    for (int l = 0; l <= f.spec.n_max; ++l) {
        SpectrumFunction Fl = F;
        if (!detail::scale_by_band(Fl, l)) continue;
        GridFunction blk = dft_inverse(Fl);
        const double v = lp_norm(blk, p) * std::pow(2.0, l * s);
        if (v > rep.value) {
            rep.value = v;
            rep.argmax_band = l;
        }
    }
    return rep;
}

inline double besov_norm(const GridFunction& f, double s, double p, double r = 3.0) {
    return besov_norm_report(f, s, p, r).value;
}

// ||(id+Delta)^{t/2} f||_{L_p} via the Bessel symbol (1+|xi|^2)^{t/2}.
inline double sobolev_norm(const GridFunction& f, double t, double p) {
    if (!(p > 1.0) || std::isinf(p))
        throw std::invalid_argument("sobolev_norm: p must lie in (1, inf)");
    SpectrumFunction F = dft_forward(f);
    const GridSpec& g = F.spec;
    for (std::size_t i = 0; i < F.coeffs.size(); ++i) {
        const double xn = g.xi_norm(i);
        F.coeffs[i] *= std::pow(1.0 + xn * xn, 0.5 * t);
    }
    return lp_norm(dft_inverse(F), p);
}

// Out-of-band spectral energy fraction of f relative to the ball |xi| <= M.
inline double out_of_band_fraction(const GridFunction& f, double M) {
    SpectrumFunction F = dft_forward(f);
    return energy_fraction_outside(F, [M](double r) { return r <= M; });
}

// ||f||_{L_p} / ( M^{D (1/p1 - 1/p)} ||f||_{L_{p1}} ); bounded uniformly in M
// for band-limited f by the Nikol'skij inequality.
inline double nikolskij_ratio(const GridFunction& f, double p, double p1, double M) {
    if (!(p1 >= 1.0) || !(p > p1))
        throw std::invalid_argument("nikolskij_ratio: need p > p1 >= 1");
    if (out_of_band_fraction(f, M) > 1e-10)
        throw std::invalid_argument("nikolskij_ratio: f is not band-limited to |xi| <= M");
    const double D = f.spec.d;
    const double denom = std::pow(M, D * (1.0 / p1 - 1.0 / p)) * lp_norm(f, p1);
    return lp_norm(f, p) / denom;
}

}  // namespace aniso
