#pragma once

// Paraproduct decomposition Pi1/Pi2/Pi3 with support verification, the
// single-coordinate machinery, the product-inequality probe, the
// decoupled wave-packet kernel probe, and the leafwise Young check.
//
// All band sums are truncated at j_max, so Pi1 + Pi2 + Pi3 equals
// (S^{j_max} f)(S^{j_max} g) exactly; for factors band-limited below
// 2^{j_max - 2} that is f g on the nose.

#include <array>
#include <optional>

#include "aniso/aniso_norm.hpp"
#include "aniso/leaves.hpp"
#include "aniso/norms.hpp"

namespace aniso {

inline constexpr int kKernelC0 = 3;  // decoupling separation, covers slopes <= 2.8

struct ParaproductTerms {
    GridFunction pi1, pi2, pi3;
    int j_max = 0;
    double residual = 0.0;  // || pi1 + pi2 + pi3 - f g ||_inf
};

namespace detail {
// All blocks S_0 f .. S_J f from one forward transform.
inline std::vector<GridFunction> all_blocks(const GridFunction& f, int J) {
    SpectrumFunction F = dft_forward(f);
    std::vector<GridFunction> out;
    out.reserve(J + 1);
    for (int k = 0; k <= J; ++k) {
        SpectrumFunction Fk = F;
        scale_by_band(Fk, k);
        out.push_back(dft_inverse(Fk));
    }
    return out;
}
}  // namespace detail

inline ParaproductTerms paraproduct_split(const GridFunction& f, const GridFunction& g,
                                          int j_max) {
    require_same_spec(f.spec, g.spec, "paraproduct_split");
    if (j_max < 2 || j_max > f.spec.n_max)
        throw std::invalid_argument("paraproduct_split: j_max outside [2, n_max]");
    const GridSpec& gs = f.spec;
    const std::size_t n = gs.size();
    auto Sf = detail::all_blocks(f, j_max);
    auto Sg = detail::all_blocks(g, j_max);

    ParaproductTerms T;
    T.j_max = j_max;
    T.pi1 = GridFunction(gs);
    T.pi2 = GridFunction(gs);
    T.pi3 = GridFunction(gs);

    // running partial sums S^{k-2}
    std::vector<cplx> partial_f(n, cplx{0.0, 0.0}), partial_g(n, cplx{0.0, 0.0});
    for (int k = 2; k <= j_max; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            partial_f[i] += Sf[k - 2].values[i];
            partial_g[i] += Sg[k - 2].values[i];
        }
        for (std::size_t i = 0; i < n; ++i) {
            T.pi1.values[i] += partial_f[i] * Sg[k].values[i];
            T.pi3.values[i] += Sf[k].values[i] * partial_g[i];
        }
    }
    for (int k = 0; k <= j_max; ++k) {
        for (int j = std::max(0, k - 1); j <= std::min(j_max, k + 1); ++j) {
            for (std::size_t i = 0; i < n; ++i)
                T.pi2.values[i] += Sf[j].values[i] * Sg[k].values[i];
        }
    }
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const cplx sum = T.pi1.values[i] + T.pi2.values[i] + T.pi3.values[i];
        res = std::max(res, std::abs(sum - f.values[i] * g.values[i]));
    }
    T.residual = res;
    return T;
}

enum class SupportFact { f1, f2 };

// Spectral energy fraction of the (f1)/(f2) paraproduct term outside its
// declared support set: annulus [2^{k-3}, 2^{k+1}] for (f1), ball 5 2^k
// for (f2). Exactly zero (up to roundoff) when the inputs are band-limited
// with plateau margins; a diagnostic for anything else.
inline double support_check(SupportFact kind, int k, const GridFunction& f,
                            const GridFunction& g) {
    require_same_spec(f.spec, g.spec, "support_check");
    const GridSpec& gs = f.spec;
    if (kind == SupportFact::f1 && k < 2)
        throw std::invalid_argument("support_check: (f1) needs k >= 2");
    if (k < 0 || k > gs.n_max)
        throw std::invalid_argument("support_check: band outside range");
    const double top = kind == SupportFact::f1 ? std::ldexp(1.0, k + 1) + std::ldexp(1.0, k - 2)
                                               : 6.0 * std::ldexp(1.0, k);
    if (top > 2.0 * gs.guard())
        throw std::invalid_argument("support_check: annulus exceeds the guard band");

    GridFunction term(gs);
    if (kind == SupportFact::f1) {
        GridFunction low = lp_partial_sum(k - 2, f);
        GridFunction high = lp_block(k, g);
        for (std::size_t i = 0; i < term.values.size(); ++i)
            term.values[i] = low.values[i] * high.values[i];
    } else {
        GridFunction high = lp_block(k, g);
        GridFunction mid(gs);
        for (int j = std::max(0, k - 1); j <= std::min(gs.n_max, k + 1); ++j) {
            GridFunction bj = lp_block(j, f);
            for (std::size_t i = 0; i < mid.values.size(); ++i) mid.values[i] += bj.values[i];
        }
        for (std::size_t i = 0; i < term.values.size(); ++i)
            term.values[i] = mid.values[i] * high.values[i];
    }
    SpectrumFunction F = dft_forward(term);
    if (kind == SupportFact::f1) {
        const double lo = std::ldexp(1.0, k - 3), hi = std::ldexp(1.0, k + 1);
        return energy_fraction_outside(F, [=](double r) { return r >= lo && r <= hi; });
    }
    const double ball = 5.0 * std::ldexp(1.0, k);
    return energy_fraction_outside(F, [=](double r) { return r <= ball; });
}

// Max over bands of the variation of S_k f transverse to x_1, for f that
// should depend on x_1 alone. Exactly zero in theory (keyo).
inline double single_coordinate_deviation(const GridFunction& f) {
    const GridSpec& g = f.spec;
    if (g.d < 2) throw std::invalid_argument("single_coordinate_deviation: needs d >= 2");
    const std::size_t fiber = g.size() / g.N;
    SpectrumFunction F = dft_forward(f);
    double dev = 0.0;
    for (int k = 0; k <= g.n_max; ++k) {
        SpectrumFunction Fk = F;
        if (!detail::scale_by_band(Fk, k)) continue;
        GridFunction blk = dft_inverse(Fk);
        for (int i1 = 0; i1 < g.N; ++i1) {
            const cplx ref = blk.values[static_cast<std::size_t>(i1) * fiber];
            for (std::size_t r = 1; r < fiber; ++r)
                dev = std::max(dev,
                               std::abs(blk.values[static_cast<std::size_t>(i1) * fiber + r] - ref));
        }
    }
    return dev;
}

struct ProductInequalityResult {
    double ratio = 0.0;
    bool in_lemma_range = true;  // -1 + 1/p < s < 0
    double numerator = 0.0;
    double denominator = 0.0;
};

// || f g ||_{B^s_{p,inf}} / ( ||f||_{B^s_{p,inf}} ( ||g||_{B^{1/p'}_{p',inf}(R)} + ||g||_inf ) ).
// g must depend on the first coordinate only.
inline ProductInequalityResult product_inequality_ratio(const GridFunction& f,
                                                        const GridFunction& g, double s,
                                                        double p, double r = 3.0) {
    require_same_spec(f.spec, g.spec, "product_inequality_ratio");
    if (!(p > 1.0) || std::isinf(p))
        throw std::invalid_argument("product_inequality_ratio: p must lie in (1, inf)");
    if (f.spec.d >= 2 && single_coordinate_deviation(g) > 1e-9 * std::max(1.0, max_abs(g)))
        throw std::invalid_argument("product_inequality_ratio: g is not a function of x_1 alone");

    GridFunction prod(f.spec);
    for (std::size_t i = 0; i < prod.values.size(); ++i)
        prod.values[i] = f.values[i] * g.values[i];

    // 1-d profile of g for the B^{1/p'}_{p',inf}(R) factor
    GridFunction gprof;
    if (f.spec.d == 1) {
        gprof = g;
    } else {
        GridSpec c = chart_spec(f.spec);
        c.d = 1;
        c.d_s = 1;
        c.d_u = 0;
        gprof = GridFunction(c);
        const std::size_t fiber = g.spec.size() / g.spec.N;
        for (int i = 0; i < g.spec.N; ++i)
            gprof.values[i] = g.values[static_cast<std::size_t>(i) * fiber];
    }
    const double pc = p / (p - 1.0);
    ProductInequalityResult res;
    res.in_lemma_range = (-1.0 + 1.0 / p < s) && (s < 0.0);
    res.numerator = besov_norm(prod, s, p, r);
    res.denominator = besov_norm(f, s, p, r) *
                      (besov_norm(gprof, 1.0 / pc, pc, r) + lp_norm(gprof, std::numeric_limits<double>::infinity()));
    res.ratio = res.denominator > 0.0 ? res.numerator / res.denominator : 0.0;
    return res;
}

// Kernel probe for the operator phi -> S~_{ks}( (S_k phi) o pi_Gamma^{-1} ),
// assembled from delta-approximant columns on a coarse ambient sub-lattice.
struct KernelProbe {
    int k = 0;
    int k_s = 0;
    int leaf_id = -1;
    LeafKind leaf_kind = LeafKind::horizontal;
    double max_abs = 0.0;            // max_{x, probed y} |V(x,y)|
    double envelope_ratio = 0.0;     // max |V| / (2^{d k} b(2^k |pi^-1 x - y|))
    int c0 = kKernelC0;
    int columns = 0;
};

namespace detail {
inline double b_envelope(double r) { return r <= 1.0 ? 1.0 : std::pow(r, -3.0); }  // d = 2
}

inline KernelProbe wave_packet_kernel(int k, int k_s, const AdmissibleLeaf& leaf,
                                      const GridSpec& g, int c0 = kKernelC0,
                                      int columns_per_axis = 8) {
    if (g.d != 2) throw std::invalid_argument("wave_packet_kernel: needs d = 2");
    if (k < 0 || k > g.n_max || k_s < 0 || k_s > g.n_max)
        throw std::invalid_argument("wave_packet_kernel: band outside [0, n_max]");
    if (k_s <= k + c0)
        throw std::invalid_argument("wave_packet_kernel: band separation insufficient (k_s <= k + C0)");
    const int N = g.N;
    const int stride = std::max(1, N / columns_per_axis);
    KernelProbe probe;
    probe.k = k;
    probe.k_s = k_s;
    probe.leaf_id = leaf.id;
    probe.leaf_kind = leaf.kind;
    probe.c0 = c0;

    const GridSpec chart = chart_spec(g);
    std::vector<double> psis(N);
    bool any = false;
    for (int i = 0; i < N; ++i) {
        psis[i] = dyadic_symbol(k_s, std::abs(chart.xi(i)));
        any = any || psis[i] != 0.0;
    }
    if (!any) return probe;

    SpectrumFunction F;
    F.spec = g;
    F.coeffs.resize(g.size());
    std::vector<cplx> fz, spec1(N), blk(N);
    for (int j1 = 0; j1 < N; j1 += stride) {
        for (int j2 = 0; j2 < N; j2 += stride) {
            const double y1 = g.x(j1), y2 = g.x(j2);
            // F(delta_y) psi_k = e^{-i y xi} psi_k(|xi|)
            for (int a = 0; a < N; ++a) {
                const double xa = g.xi(a);
                for (int b = 0; b < N; ++b) {
                    const double xb = g.xi(b);
                    const double w = dyadic_symbol(k, std::hypot(xa, xb));
                    if (w == 0.0) {
                        F.coeffs[static_cast<std::size_t>(a) * N + b] = 0.0;
                        continue;
                    }
                    const double ph = -(y1 * xa + y2 * xb);
                    F.coeffs[static_cast<std::size_t>(a) * N + b] =
                        w * cplx{std::cos(ph), std::sin(ph)};
                }
            }
            detail::restrict_spectrum_to_graph(F, leaf, std::ldexp(1.0, k + 1), fz);
            for (int i = 0; i < N; ++i) spec1[i] = fz[i];
            detail::fft_axis(spec1.data(), N, 1, 0, -1);
            for (int i = 0; i < N; ++i)
                if (i & 1) spec1[i] = -spec1[i];
            for (int i = 0; i < N; ++i) spec1[i] *= chart.h() * psis[i];
            for (int i = 0; i < N; ++i)
                if (i & 1) spec1[i] = -spec1[i];
            detail::fft_axis(spec1.data(), N, 1, 0, +1);
            for (int i = 0; i < N; ++i) {
                const double v = std::abs(spec1[i]) / chart.L;
                if (v > probe.max_abs) probe.max_abs = v;
                const double dist = std::hypot(g.x(i) - y1, leaf.gamma(g.x(i)) - y2);
                const double env = std::ldexp(1.0, 2 * k) *
                                   detail::b_envelope(std::ldexp(dist, k));
                const double ratio = v / env;
                if (ratio > probe.envelope_ratio) probe.envelope_ratio = ratio;
            }
            ++probe.columns;
        }
    }
    return probe;
}

struct KernelDecayFit {
    double exponent = 0.0;  // fitted decay rate of max|V| in k_s (positive = decaying)
    int points_used = 0;
    std::vector<KernelProbe> probes;
};

inline KernelDecayFit kernel_decay_fit(int k, int ks_lo, int ks_hi, const AdmissibleLeaf& leaf,
                                       const GridSpec& g, int c0 = kKernelC0,
                                       double floor = 1e-15) {
    KernelDecayFit fit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (int ks = ks_lo; ks <= ks_hi; ++ks) {
        KernelProbe p = wave_packet_kernel(k, ks, leaf, g, c0);
        if (p.max_abs > floor) {
            const double x = ks, y = std::log2(p.max_abs);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++n;
        }
        fit.probes.push_back(std::move(p));
    }
    fit.points_used = n;
    if (n >= 2) {
        fit.exponent = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
    } else if (!fit.probes.empty()) {
        // everything at or below the floor: decay too fast to resolve
        fit.exponent = std::numeric_limits<double>::infinity();
    }
    return fit;
}

// Leafwise Young (magic5): || psi~ * f ||^s_{p,Gamma} over the family against
// ||psi~||_{L_1} times the family max of ||f||^s_{p,Gamma'}.
inline double leafwise_young_check(const GridFunction& kernel, const GridFunction& f,
                                   const LeafFamily& family, double s, double p,
                                   double r = 3.0) {
    require_same_spec(kernel.spec, f.spec, "leafwise_young_check");
    const double l1 = lp_norm(kernel, 1.0);
    if (!(l1 > 0.0) || !std::isfinite(l1))
        throw std::invalid_argument("leafwise_young_check: kernel not in L_1");
    // psi~ * f via the convolution theorem (periodic, exact)
    SpectrumFunction Fk = dft_forward(kernel);
    SpectrumFunction Ff = dft_forward(f);
    for (std::size_t i = 0; i < Ff.coeffs.size(); ++i) Ff.coeffs[i] *= Fk.coeffs[i];
    GridFunction conv = dft_inverse(Ff);

    double den = 0.0;
    for (const AdmissibleLeaf& leaf : family.leaves)
        den = std::max(den, leafwise_besov_norm(f, leaf, s, p, r));
    double num = 0.0;
    for (const AdmissibleLeaf& leaf : family.leaves)
        num = std::max(num, leafwise_besov_norm(conv, leaf, s, p, r));
    return den > 0.0 ? num / (l1 * den) : 0.0;
}

}  // namespace aniso
