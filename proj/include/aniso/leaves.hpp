#pragma once

// Unstable-cone geometry and admissible stable leaves realized as graphs
// z -> gamma(z) over the horizontal axis, with the chord-transversality
// condition reformulated as a slope bound: the chord direction must stay
// within angle pi/2 - theta - margin of the horizontal subspace.
//
// Leaves come in closed-form families (affine, sinusoidal, quadratic) so
// chart norms and slopes are computed analytically. Graphs are scalar
// (d_u = 1, d_s = d - 1); the planar case d = 2 is the one exercised by
// every experiment.

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "aniso/grid.hpp"
#include "aniso/rng.hpp"
#include "aniso/spectral.hpp"

namespace aniso {

inline constexpr double kChordMarginDeg = 5.0;       // default chord-slope margin
inline constexpr double kConeHorizontalGapDeg = 1.0; // min gap between cone and horizontal

inline double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }

struct UnstableCone {
    int d_s = 1;
    int d_u = 1;
    std::vector<double> axis;  // unit vector spanning the reference d_u-subspace
    double theta = 0.0;        // half-angle, radians

    int dim() const { return d_s + d_u; }
};

inline bool contains_direction(const UnstableCone& cone, const std::vector<double>& v) {
    if (static_cast<int>(v.size()) != cone.dim())
        throw std::invalid_argument("contains_direction: dimension mismatch");
    double vv = 0.0, dv = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        vv += v[i] * v[i];
        dv += v[i] * cone.axis[i];
    }
    if (!(vv > 0.0)) throw std::invalid_argument("contains_direction: zero vector");
    // closed cone: angle(v, axis line) <= theta
    return std::abs(dv) >= std::cos(cone.theta) * std::sqrt(vv) - 1e-15;
}

inline UnstableCone make_cone(int d_s, int d_u, std::vector<double> axis, double theta) {
    if (d_u != 1) throw std::invalid_argument("make_cone: only d_u = 1 cones are supported");
    if (d_s < 1) throw std::invalid_argument("make_cone: need d_s >= 1");
    if (!(theta > 0.0) || !(theta < std::numbers::pi / 2.0))
        throw std::invalid_argument("make_cone: theta must lie in (0, pi/2)");
    if (static_cast<int>(axis.size()) != d_s + d_u)
        throw std::invalid_argument("make_cone: axis dimension mismatch");
    double n2 = 0.0;
    for (double a : axis) n2 += a * a;
    if (!(n2 > 0.0)) throw std::invalid_argument("make_cone: zero axis");
    const double n = std::sqrt(n2);
    for (double& a : axis) a /= n;
    // angle between the axis and the horizontal subspace R^{d_s} x {0}:
    // arccos of the horizontal component of the unit axis
    double hor2 = 0.0;
    for (int i = 0; i < d_s; ++i) hor2 += axis[i] * axis[i];
    const double horizontal_angle = std::acos(std::min(1.0, std::sqrt(hor2)));
    if (horizontal_angle <= theta + deg2rad(kConeHorizontalGapDeg))
        throw std::invalid_argument(
            "make_cone: cone touches the horizontal subspace (R^{d_s} x {0})");
    UnstableCone c;
    c.d_s = d_s;
    c.d_u = d_u;
    c.axis = std::move(axis);
    c.theta = theta;
    return c;
}

// Chord slope bound induced by the cone: |gamma(z)-gamma(z')| / |z-z'| must
// stay below tan(pi/2 - theta - margin).
inline double chord_slope_bound(const UnstableCone& cone, double margin_deg = kChordMarginDeg) {
    return std::tan(std::numbers::pi / 2.0 - cone.theta - deg2rad(margin_deg));
}

enum class LeafKind { horizontal, affine, sinusoidal, quadratic };

inline const char* leaf_kind_name(LeafKind k) {
    switch (k) {
        case LeafKind::horizontal: return "horizontal";
        case LeafKind::affine: return "affine";
        case LeafKind::sinusoidal: return "sinusoidal";
        case LeafKind::quadratic: return "quadratic";
    }
    return "?";
}

// Graph leaf Gamma = {(z, gamma(z - c1) + c2)}. Coefficients per family:
//   horizontal: none
//   affine:     {a}                     gamma(z) = a z
//   sinusoidal: {A, m, phase}           gamma(z) = A sin(2 pi m z / L + phase)
//   quadratic:  {q}                     gamma(z) = q z^2
struct AdmissibleLeaf {
    LeafKind kind = LeafKind::horizontal;
    std::vector<double> coeffs;
    double C_F = 2.0;   // chart-norm bound certified at construction
    double r = 3.0;     // smoothness order used for chart-norm validation
    double offset_z = 0.0;  // translation along the chart (c1)
    double offset_u = 0.0;  // translation in the graph direction (c2)
    double box_L = 0.0;     // box the leaf was validated against
    int id = -1;            // position within its family, set on sampling

    double gamma(double z) const {
        const double zc = z - offset_z;
        switch (kind) {
            case LeafKind::horizontal: return offset_u;
            case LeafKind::affine: return coeffs[0] * zc + offset_u;
            case LeafKind::sinusoidal: {
                const double om = 2.0 * std::numbers::pi * coeffs[1] / box_L;
                return coeffs[0] * std::sin(om * zc + coeffs[2]) + offset_u;
            }
            case LeafKind::quadratic: return coeffs[0] * zc * zc + offset_u;
        }
        return 0.0;
    }

    double dgamma(double z) const {
        const double zc = z - offset_z;
        switch (kind) {
            case LeafKind::horizontal: return 0.0;
            case LeafKind::affine: return coeffs[0];
            case LeafKind::sinusoidal: {
                const double om = 2.0 * std::numbers::pi * coeffs[1] / box_L;
                return coeffs[0] * om * std::cos(om * zc + coeffs[2]);
            }
            case LeafKind::quadratic: return 2.0 * coeffs[0] * zc;
        }
        return 0.0;
    }

    // sup_z |gamma'| over the box, exact per family
    double max_slope() const {
        switch (kind) {
            case LeafKind::horizontal: return 0.0;
            case LeafKind::affine: return std::abs(coeffs[0]);
            case LeafKind::sinusoidal:
                return std::abs(coeffs[0]) * 2.0 * std::numbers::pi * coeffs[1] / box_L;
            case LeafKind::quadratic: return std::abs(coeffs[0]) * box_L;
        }
        return 0.0;
    }

    // C^r chart norm over |z| <= L/2: max over derivative orders 0..ceil(r)
    double chart_norm() const {
        const int orders = static_cast<int>(std::ceil(r));
        const double half = box_L / 2.0;
        double m = 0.0;
        switch (kind) {
            case LeafKind::horizontal: break;
            case LeafKind::affine:
                m = std::max(std::abs(coeffs[0]) * half, std::abs(coeffs[0]));
                break;
            case LeafKind::sinusoidal: {
                const double om = 2.0 * std::numbers::pi * coeffs[1] / box_L;
                double p = std::abs(coeffs[0]);
                for (int j = 0; j <= orders; ++j) {
                    m = std::max(m, p);
                    p *= om;
                }
                break;
            }
            case LeafKind::quadratic: {
                const double q = std::abs(coeffs[0]);
                m = std::max({q * half * half, 2.0 * q * half, 2.0 * q});
                break;
            }
        }
        return m;
    }

    bool weights_constant() const {
        return kind == LeafKind::horizontal || kind == LeafKind::affine;
    }
};

// Validate and construct a graph leaf. Rejections name the violated
// condition (chart norm vs chord transversality).
inline AdmissibleLeaf make_graph_leaf(LeafKind kind, std::vector<double> coeffs,
                                      const UnstableCone& cone, double C_F, double r,
                                      double offset_z, double offset_u, const GridSpec& grid,
                                      double margin_deg = kChordMarginDeg,
                                      std::uint64_t chord_seed = 1234,
                                      int chord_pairs = 10000) {
    if (cone.d_s != grid.d_s || cone.dim() != grid.d)
        throw std::invalid_argument("make_graph_leaf: cone/grid dimension mismatch");
    if (grid.d_s != grid.d - 1 || grid.d_u != 1)
        throw std::invalid_argument("make_graph_leaf: leaves need d_u = 1");
    AdmissibleLeaf leaf;
    leaf.kind = kind;
    leaf.coeffs = std::move(coeffs);
    leaf.C_F = C_F;
    leaf.r = r;
    leaf.offset_z = offset_z;
    leaf.offset_u = offset_u;
    leaf.box_L = grid.L;
    const std::size_t want = kind == LeafKind::horizontal ? 0
                           : kind == LeafKind::sinusoidal ? 3
                                                          : 1;
    if (leaf.coeffs.size() != want)
        throw std::invalid_argument("make_graph_leaf: wrong coefficient count for family");
    if (kind == LeafKind::sinusoidal &&
        (leaf.coeffs[1] < 1.0 || leaf.coeffs[1] != std::floor(leaf.coeffs[1])))
        throw std::invalid_argument("make_graph_leaf: sinusoidal frequency index must be a positive integer");
    if (leaf.chart_norm() > C_F)
        throw std::invalid_argument(std::string("make_graph_leaf: chart norm exceeds C_F (") +
                                    leaf_kind_name(kind) + ")");
    const double bound = chord_slope_bound(cone, margin_deg);
    if (leaf.max_slope() > bound)
        throw std::invalid_argument(
            std::string("make_graph_leaf: chord transversality violated (max slope ") +
            std::to_string(leaf.max_slope()) + " > " + std::to_string(bound) + ")");
    // sampled chord check: closed-form slope bounds already certify this,
    // but the sampling test is the operational contract
    Rng rng(chord_seed);
    const double half = grid.L / 2.0;
    for (int i = 0; i < chord_pairs; ++i) {
        const double z1 = rng.uniform(-half, half);
        double z2 = rng.uniform(-half, half);
        if (std::abs(z1 - z2) < 1e-9 * grid.L) z2 = z1 + grid.L / 7.0;
        const double slope =
            std::abs((leaf.gamma(z1) - leaf.gamma(z2)) / (z1 - z2));
        if (slope > bound)
            throw std::invalid_argument("make_graph_leaf: chord transversality sample failure");
    }
    return leaf;
}

struct LeafFamilyConfig {
    int affine_count = 1;
    int sinusoidal_count = 1;
    int quadratic_count = 1;
    int translations = 8;           // translated copies per curved representative
    double translation_step = 0.0;  // 0 -> K_rad/2 snapped to the lattice
    double C_F = 4.0;
    double r = 3.0;
    double margin_deg = kChordMarginDeg;
    double slope_fill = 0.85;  // representatives use this fraction of the slope bound
};

struct LeafFamily {
    std::vector<AdmissibleLeaf> leaves;
    LeafFamilyConfig config;
    std::uint64_t seed = 0;
};

// Deterministic family: the horizontal leaf plus translated closed-form
// representatives. Candidates that fail validation are skipped.
inline LeafFamily sample_leaf_family(const GridSpec& grid, const UnstableCone& cone,
                                     const LeafFamilyConfig& cfg, std::uint64_t seed) {
    if (cfg.affine_count < 0 || cfg.sinusoidal_count < 0 || cfg.quadratic_count < 0 ||
        cfg.translations < 1)
        throw std::invalid_argument("sample_leaf_family: counts must be >= 1 (translations) / >= 0");
    LeafFamily fam;
    fam.config = cfg;
    fam.seed = seed;
    Rng rng(seed);
    double step = cfg.translation_step > 0.0 ? cfg.translation_step : grid.K_rad / 2.0;
    step = std::max(1, static_cast<int>(std::round(step / grid.h()))) * grid.h();
    // 8-point translation stencil (includes the identity offset)
    static const int stencil[8][2] = {{0, 0}, {1, 0}, {-1, 0}, {0, 1},
                                      {0, -1}, {1, 1}, {-1, -1}, {1, -1}};
    const int curved = cfg.affine_count + cfg.sinusoidal_count + cfg.quadratic_count;
    const double bound = chord_slope_bound(cone, cfg.margin_deg);

    auto push = [&](LeafKind kind, std::vector<double> coeffs, int copies) {
        for (int ti = 0; ti < copies; ++ti) {
            const int si = ti % 8;
            const double ring = 1.0 + ti / 8;  // widen the stencil past 8 copies
            try {
                AdmissibleLeaf leaf = make_graph_leaf(
                    kind, coeffs, cone, cfg.C_F, cfg.r, stencil[si][0] * step * ring,
                    stencil[si][1] * step * ring, grid, cfg.margin_deg, seed + 77u * ti);
                leaf.id = static_cast<int>(fam.leaves.size());
                fam.leaves.push_back(std::move(leaf));
            } catch (const std::invalid_argument&) {
                // invalid candidate skipped
            }
        }
    };

    // horizontal leaf: one copy normally, the full stencil when no curved
    // representatives were requested
    push(LeafKind::horizontal, {}, curved == 0 ? cfg.translations : 1);

    for (int i = 0; i < cfg.affine_count; ++i) {
        const double a = (i == 0 ? 1.0 : rng.uniform(0.3, std::min(bound * cfg.slope_fill, 1.0)) *
                                             (rng.uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0));
        push(LeafKind::affine, {a}, cfg.translations);
    }
    for (int i = 0; i < cfg.sinusoidal_count; ++i) {
        const double m = (i % 2) + 1;
        const double om = 2.0 * std::numbers::pi * m / grid.L;
        const double A = cfg.slope_fill * bound / om * (i == 0 ? 0.5 : rng.uniform(0.3, 1.0));
        const double phase = i == 0 ? 0.0 : rng.uniform(0.0, 2.0 * std::numbers::pi);
        push(LeafKind::sinusoidal, {A, m, phase}, cfg.translations);
    }
    for (int i = 0; i < cfg.quadratic_count; ++i) {
        const double q = cfg.slope_fill * bound / grid.L * (i == 0 ? 0.7 : rng.uniform(0.3, 1.0));
        push(LeafKind::quadratic, {q}, cfg.translations);
    }
    if (fam.leaves.empty())
        throw std::invalid_argument("sample_leaf_family: no valid leaves generated");
    return fam;
}

// Chart samples of a grid function along a leaf, with the mu_Gamma density.
struct LeafFunction {
    GridSpec chart;                 // d = d_s grid with the ambient N, L
    std::vector<cplx> values;       // f(z_i, gamma(z_i))
    std::vector<double> weights;    // sqrt(1 + gamma'(z_i)^2)
};

inline GridSpec chart_spec(const GridSpec& g) {
    GridSpec c = g;
    c.d = g.d_s;
    c.d_s = g.d_s;
    c.d_u = 0;
    return c;
}

namespace detail {

// Evaluate f along the graph (z, y(z)) by semi-spectral interpolation:
// inverse transform along axis 0, then a phase sum over the k2 rows that
// may carry content (|xi_2| <= xi2_cap; pass +inf to use all rows).
inline void restrict_spectrum_to_graph(const SpectrumFunction& F, const AdmissibleLeaf& leaf,
                                       double xi2_cap, std::vector<cplx>& out) {
    const GridSpec& g = F.spec;
    const int N = g.N;
    // Unnormalized inverse along axis 0. The centered-box phase (-1)^{k1}
    // is realised by reading row (i + N/2) mod N, via
    // sum_k (-1)^k c_k e^{2 pi i j k / N} = sum_k c_k e^{2 pi i (j + N/2) k / N}.
    std::vector<cplx> P = F.coeffs;
    detail::fft_axis(P.data(), N, 2, 0, +1);
    out.assign(N, cplx{0.0, 0.0});
    const double invL = 1.0 / g.L;
    const double dxi = g.dxi();
    std::vector<double> y(N);
    for (int i = 0; i < N; ++i) y[i] = leaf.gamma(g.x(i));
    const int kcap = std::min(N / 2, static_cast<int>(std::floor(xi2_cap / dxi)) + 1);
    for (int i = 0; i < N; ++i) {
        // row shifted by N/2 realizes the centered-box phase (-1)^{k1}
        const cplx* row = P.data() + static_cast<std::size_t>((i + N / 2) % N) * N;
        const cplx w = {std::cos(dxi * y[i]), std::sin(dxi * y[i])};
        cplx acc = row[0];
        cplx up = w;
        cplx dn = std::conj(w);
        for (int k = 1; k <= kcap; ++k) {
            if (k < N / 2) acc += row[k] * up;
            const int kneg = N - k;
            if (kneg > N / 2 || (kneg == N / 2 && k == N / 2)) acc += row[kneg] * dn;
            up *= w;
            dn *= std::conj(w);
        }
        out[i] = acc * invL * invL;
    }
}

}  // namespace detail

// Restrict f to the leaf chart by trigonometric interpolation at the graph
// points (z_i, gamma(z_i)), attaching Riemann-volume weights.
inline LeafFunction restrict_to_leaf(const GridFunction& f, const AdmissibleLeaf& leaf) {
    const GridSpec& g = f.spec;
    if (g.d != 2 || g.d_s != 1)
        throw std::invalid_argument("restrict_to_leaf: implemented for d = 2, d_s = 1 grids");
    // leaf must stay inside the box
    double ymax = 0.0;
    for (int i = 0; i < g.N; ++i) ymax = std::max(ymax, std::abs(leaf.gamma(g.x(i))));
    if (ymax > g.L / 2.0)
        throw std::invalid_argument("restrict_to_leaf: leaf exits the padded box");
    SpectrumFunction F = dft_forward(f);
    LeafFunction lf;
    lf.chart = chart_spec(g);
    detail::restrict_spectrum_to_graph(F, leaf, std::numeric_limits<double>::infinity(),
                                       lf.values);
    lf.weights.resize(g.N);
    for (int i = 0; i < g.N; ++i)
        lf.weights[i] = std::sqrt(1.0 + leaf.dgamma(g.x(i)) * leaf.dgamma(g.x(i)));
    return lf;
}

}  // namespace aniso
