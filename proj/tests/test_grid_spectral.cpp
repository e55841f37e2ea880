#include <catch2/catch_amalgamated.hpp>

#include <numbers>

#include "aniso/grid.hpp"
#include "aniso/grid_io.hpp"
#include "aniso/norms.hpp"
#include "aniso/rng.hpp"
#include "aniso/spectral.hpp"

using namespace aniso;
using Catch::Approx;

namespace {
constexpr double kPi = std::numbers::pi;

GridFunction plane_wave(const GridSpec& g, const std::vector<double>& xi0) {
    GridFunction f(g);
    std::vector<int> idx(g.d);
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        g.unflatten(i, idx.data());
        double ph = 0.0;
        for (int a = 0; a < g.d; ++a) ph += xi0[a] * g.x(idx[a]);
        f.values[i] = cplx{std::cos(ph), std::sin(ph)};
    }
    return f;
}

GridFunction random_function(const GridSpec& g, std::uint64_t seed) {
    Rng rng(seed);
    GridFunction f(g);
    for (cplx& v : f.values) v = cplx{rng.normal(), rng.normal()};
    return f;
}
}  // namespace

TEST_CASE("make_grid validates and computes the band budget") {
    // guard = pi N / (2 L); n_max largest n with 2^{n+1} <= guard
    const GridSpec g = make_grid(1, 1, 128, kPi, kPi / 4.0);
    CHECK(g.guard() == Approx(64.0));
    CHECK(g.n_max == 5);

    const GridSpec g2 = make_grid(2, 1, 512, 8.0, 2.0);
    CHECK(g2.n_max == 5);  // guard = 100.5

    CHECK_THROWS_AS(make_grid(1, 1, 500, 16.0, 4.0), std::invalid_argument);  // not pow2
    CHECK_THROWS_AS(make_grid(1, 1, 512, 16.0, 8.0), std::invalid_argument);  // K_rad > L/4
    // fewer than 6 usable bands: guard(512, 16) = 50.3 < 2^6
    CHECK_THROWS_AS(make_grid(2, 1, 512, 16.0, 4.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(4, 1, 128, kPi, kPi / 4.0), std::invalid_argument);
}

TEST_CASE("chi has exact plateaus and matches its closed form") {
    CHECK(chi(0.0) == 1.0);
    CHECK(chi(0.5) == 1.0);
    CHECK(chi(1.0) == 1.0);
    CHECK(chi(2.0) == 0.0);
    CHECK(chi(3.0) == 0.0);
    // midpoint symmetry of the mollifier quotient
    CHECK(chi(1.5) == Approx(0.5).margin(1e-15));
    // independent route: chi(x) = 1 / (1 + exp(1/(2-x) - 1/(x-1))) on (1,2)
    for (double x : {1.1, 1.25, 1.5, 1.75, 1.9}) {
        const double alt = 1.0 / (1.0 + std::exp(1.0 / (2.0 - x) - 1.0 / (x - 1.0)));
        CHECK(chi(x) == Approx(alt).epsilon(1e-14));
    }
    // frozen regression constant for the chosen mollifier
    CHECK(chi(1.25) == Approx(1.0 / (1.0 + std::exp(-8.0 / 3.0))).epsilon(1e-15));
    // monotone
    double prev = 1.0;
    for (double x = 1.0; x <= 2.0; x += 1.0 / 64.0) {
        CHECK(chi(x) <= prev + 1e-15);
        prev = chi(x);
    }
    CHECK_THROWS_AS(chi(-0.1), std::invalid_argument);
}

TEST_CASE("dyadic windows: pointwise values, range, support, telescoping") {
    const GridSpec g = make_grid(1, 1, 128, kPi, kPi / 4.0);
    CHECK(dyadic_symbol(0, 0.0) == 1.0);
    CHECK(dyadic_symbol(1, 2.0) == Approx(1.0));         // chi(1) - chi(2)
    CHECK(dyadic_symbol(2, 2.0) == Approx(0.0).margin(0.0));  // chi(1/2) - chi(1)

    for (int n = 0; n <= g.n_max; ++n) {
        const SpectralWindow w = make_dyadic_window(n, 1, g);
        for (std::size_t i = 0; i < w.values.size(); ++i) {
            CHECK(w.values[i] >= 0.0);
            CHECK(w.values[i] <= 1.0);
            const double r = std::abs(g.xi(static_cast<int>(i)));
            if (n == 0) {
                if (r > 2.0) CHECK(w.values[i] == 0.0);
            } else if (r <= std::ldexp(1.0, n - 1) || r >= std::ldexp(1.0, n + 1)) {
                CHECK(w.values[i] == 0.0);
            }
        }
    }
    CHECK_THROWS_AS(make_dyadic_window(g.n_max + 1, 1, g), std::invalid_argument);

    // partition of unity on the lattice below 2^{n_max}
    const GridSpec g2 = make_grid(2, 1, 128, kPi, kPi / 4.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < g2.size(); ++i) {
        const double r = g2.xi_norm(i);
        if (r > std::ldexp(1.0, g2.n_max)) continue;
        double s = 0.0;
        for (int n = 0; n <= g2.n_max; ++n) s += dyadic_symbol(n, r);
        worst = std::max(worst, std::abs(s - 1.0));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("dft conventions: constant, plane wave, round trip") {
    const GridSpec g = make_grid(1, 1, 128, kPi, kPi / 4.0);
    SECTION("constant maps to c L^d at zero frequency") {
        GridFunction f(g);
        for (cplx& v : f.values) v = cplx{2.5, -1.0};
        const SpectrumFunction F = dft_forward(f);
        CHECK(std::abs(F.coeffs[0] - cplx{2.5, -1.0} * g.L) < 1e-10);
        for (int i = 1; i < g.N; ++i) CHECK(std::abs(F.coeffs[i]) < 1e-10);
    }
    SECTION("plane wave concentrates at its lattice frequency") {
        const double xi0 = 3.0 * g.dxi();
        const SpectrumFunction F = dft_forward(plane_wave(g, {xi0}));
        for (int i = 0; i < g.N; ++i) {
            const double expect = g.k_signed(i) == 3 ? g.L : 0.0;
            CHECK(std::abs(F.coeffs[i] - expect) < 1e-9);
        }
    }
    SECTION("round trip at 1e-12 and Parseval consistency") {
        const GridFunction f = random_function(g, 42);
        const SpectrumFunction F = dft_forward(f);
        const GridFunction back = dft_inverse(F);
        double err = 0.0;
        for (std::size_t i = 0; i < f.values.size(); ++i)
            err = std::max(err, std::abs(back.values[i] - f.values[i]));
        CHECK(err / max_abs(f) <= 1e-12);

        // Parseval: ||f||_2^2 = (2 pi)^{-d} sum |F|^2 dxi
        double phys = 0.0, spec = 0.0;
        for (const cplx& v : f.values) phys += std::norm(v);
        phys *= g.h();
        for (const cplx& c : F.coeffs) spec += std::norm(c);
        spec *= g.dxi() / (2.0 * kPi);
        CHECK(phys == Approx(spec).epsilon(1e-12));
    }
    SECTION("2d round trip") {
        const GridSpec g2 = make_grid(2, 1, 64, kPi / 2.0, kPi / 8.0);
        const GridFunction f = random_function(g2, 7);
        const GridFunction back = dft_inverse(dft_forward(f));
        double err = 0.0;
        for (std::size_t i = 0; i < f.values.size(); ++i)
            err = std::max(err, std::abs(back.values[i] - f.values[i]));
        CHECK(err / max_abs(f) <= 1e-12);
    }
}

TEST_CASE("apply_multiplier: identity, eigenfunction, linearity") {
    const GridSpec g = make_grid(1, 1, 128, kPi, kPi / 4.0);
    const GridFunction f = random_function(g, 3);
    SECTION("identity symbol") {
        std::vector<double> one(g.size(), 1.0);
        const GridFunction out = apply_multiplier(one, f);
        for (std::size_t i = 0; i < f.values.size(); ++i)
            CHECK(std::abs(out.values[i] - f.values[i]) < 1e-12 * max_abs(f));
    }
    SECTION("plane waves are eigenfunctions") {
        const double xi0 = 2.0;  // lattice frequency, |xi0| = 2
        const GridFunction pw = plane_wave(g, {xi0});
        const SpectralWindow w1 = make_dyadic_window(1, 1, g);
        const GridFunction out = apply_multiplier(w1, pw);
        // psi_1(2) = 1, so the wave passes through unchanged
        for (std::size_t i = 0; i < pw.values.size(); ++i)
            CHECK(std::abs(out.values[i] - pw.values[i]) < 1e-12);
    }
    SECTION("linearity") {
        const GridFunction u = random_function(g, 5);
        const SpectralWindow w2 = make_dyadic_window(2, 1, g);
        const cplx alpha{0.7, -0.3}, beta{-1.2, 0.4};
        GridFunction combo(g);
        for (std::size_t i = 0; i < combo.values.size(); ++i)
            combo.values[i] = alpha * f.values[i] + beta * u.values[i];
        const GridFunction lhs = apply_multiplier(w2, combo);
        const GridFunction rf = apply_multiplier(w2, f);
        const GridFunction ru = apply_multiplier(w2, u);
        double err = 0.0;
        for (std::size_t i = 0; i < lhs.values.size(); ++i)
            err = std::max(err,
                           std::abs(lhs.values[i] - alpha * rf.values[i] - beta * ru.values[i]));
        CHECK(err <= 1e-12 * (std::abs(alpha) * max_abs(f) + std::abs(beta) * max_abs(u)));
    }
    SECTION("lattice mismatch rejected") {
        std::vector<double> bad(g.size() - 1, 1.0);
        CHECK_THROWS_AS(apply_multiplier(bad, f), std::invalid_argument);
    }
}

TEST_CASE("Littlewood-Paley blocks and partial sums") {
    const GridSpec g = make_grid(1, 1, 128, kPi, kPi / 4.0);
    SECTION("constants: S_0(1) = 1, S_k(1) = 0 for k >= 1, S_{-1} = 0") {
        GridFunction one(g);
        for (cplx& v : one.values) v = 1.0;
        const GridFunction s0 = lp_block(0, one);
        for (const cplx& v : s0.values) CHECK(std::abs(v - 1.0) < 1e-12);
        for (int k = 1; k <= g.n_max; ++k) {
            const GridFunction sk = lp_block(k, one);
            CHECK(max_abs(sk) < 1e-12);
        }
        CHECK(max_abs(lp_block(-1, one)) == 0.0);
        CHECK_THROWS_AS(lp_block(g.n_max + 1, one), std::invalid_argument);
    }
    SECTION("almost orthogonality over 50 random functions") {
        double worst = 0.0;
        for (int rep = 0; rep < 50; ++rep) {
            const GridFunction f = random_function(g, 100 + rep);
            const double scale = max_abs(f);
            for (int n = 0; n <= g.n_max; ++n)
                for (int m = 0; m <= g.n_max; ++m) {
                    if (std::abs(n - m) < 2) continue;
                    worst = std::max(worst, max_abs(lp_block(n, lp_block(m, f))) / scale);
                }
        }
        CHECK(worst <= 1e-10);
    }
    SECTION("telescoping reconstruction of band-limited data") {
        Rng rng(11);
        SpectrumFunction F;
        F.spec = g;
        F.coeffs.assign(g.size(), cplx{});
        for (int i = 0; i < g.N; ++i)
            if (std::abs(g.xi(i)) <= std::ldexp(1.0, g.n_max))
                F.coeffs[i] = cplx{rng.normal(), rng.normal()};
        const GridFunction f = dft_inverse(F);
        GridFunction sum(g);
        for (int n = 0; n <= g.n_max; ++n) {
            const GridFunction sn = lp_block(n, f);
            for (std::size_t i = 0; i < sum.values.size(); ++i) sum.values[i] += sn.values[i];
        }
        double err = 0.0;
        for (std::size_t i = 0; i < sum.values.size(); ++i)
            err = std::max(err, std::abs(sum.values[i] - f.values[i]));
        CHECK(err / max_abs(f) <= 1e-12);

        const GridFunction full = lp_partial_sum(g.n_max, f);
        err = 0.0;
        for (std::size_t i = 0; i < full.values.size(); ++i)
            err = std::max(err, std::abs(full.values[i] - f.values[i]));
        CHECK(err / max_abs(f) <= 1e-12);
    }
    SECTION("partial sum kills a wave at |xi| = 2 for j = 0") {
        const GridFunction pw = plane_wave(g, {2.0});
        CHECK(max_abs(lp_partial_sum(0, pw)) < 1e-12);
    }
    SECTION("partial sums are band-limited to 2^{j+1}") {
        const GridFunction f = random_function(g, 12);
        for (int j = 2; j <= g.n_max; ++j) {
            const GridFunction sj = lp_partial_sum(j, f);
            const SpectrumFunction F = dft_forward(sj);
            const double cap = std::ldexp(1.0, j + 1);
            const double frac =
                energy_fraction_outside(F, [cap](double r) { return r <= cap; });
            CHECK(frac <= 1e-20);
        }
    }
}

TEST_CASE("uniform L1 mass and symbol derivative decay") {
    // d = 1: variation < 1.25 across bands, < 5% drift when N doubles
    auto masses = [](const GridSpec& g) {
        std::vector<double> out;
        for (int n = 1; n <= g.n_max; ++n) {
            SpectrumFunction F;
            F.spec = g;
            F.coeffs.resize(g.size());
            for (std::size_t i = 0; i < F.coeffs.size(); ++i)
                F.coeffs[i] = dyadic_symbol(n, g.xi_norm(i));
            out.push_back(lp_norm(dft_inverse(F), 1.0));
        }
        return out;
    };
    const GridSpec ga = make_grid(1, 1, 256, 2.0 * kPi, kPi / 2.0);
    const GridSpec gb = make_grid(1, 1, 512, 2.0 * kPi, kPi / 2.0);
    const auto ma = masses(ga), mb = masses(gb);
    double lo = 1e300, hi = 0.0;
    for (double v : ma) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK(hi / lo < 1.25);
    for (std::size_t i = 0; i < ma.size(); ++i)
        CHECK(std::abs(mb[i] / ma[i] - 1.0) < 0.05);

    // derivative decay: centered differences scale as 2^{-n} within a factor
    // 2 of a single constant across n in [2, n_max]
    std::vector<double> ratio;
    for (int n = 2; n <= ga.n_max; ++n) {
        double fd = 0.0;
        for (int i = 1; i + 1 < ga.N; ++i) {
            const double rlo = std::abs(ga.dxi() * (i - 1 - ga.N / 2));
            const double rhi = std::abs(ga.dxi() * (i + 1 - ga.N / 2));
            fd = std::max(fd, std::abs(dyadic_symbol(n, rhi) - dyadic_symbol(n, rlo)) /
                                  (2.0 * ga.dxi()));
        }
        ratio.push_back(fd * std::ldexp(1.0, n));
    }
    double lg = 0.0;
    for (double v : ratio) lg += std::log2(v);
    const double geo = std::exp2(lg / ratio.size());
    for (double v : ratio) {
        CHECK(v / geo <= 2.0);
        CHECK(geo / v <= 2.0);
    }
}

TEST_CASE("grid function binary serialization round trip") {
    const GridSpec g = make_grid(2, 1, 128, kPi, kPi / 4.0);
    GridFunction f = random_function(g, 9);
    std::stringstream ss;
    write_grid_function(ss, f);
    CHECK(ss.str().size() == kGridHeaderBytes + g.size() * 16);
    const GridFunction back = read_grid_function(ss);
    CHECK(back.spec == g);
    for (std::size_t i = 0; i < f.values.size(); ++i) CHECK(back.values[i] == f.values[i]);
}
