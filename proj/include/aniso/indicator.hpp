#pragma once

// Characteristic functions of half-spaces {x.u > c} and strips
// {c < x.u < c + B}, sharp or mollified. The profile is analytic in the
// scalar tau = x.u, so rotated normals never require resampling a rotated
// grid. Mollification replaces the jump by a C-infinity ramp of width eps
// centered on the interface.

#include <cmath>
#include <optional>

#include "aniso/chi.hpp"
#include "aniso/grid.hpp"
#include "aniso/leaves.hpp"

namespace aniso {

enum class IndicatorKind { half_space, strip };

struct IndicatorSpec {
    IndicatorKind kind = IndicatorKind::strip;
    std::vector<double> normal;  // unit vector u
    double offset = 0.0;         // c
    double width = 0.0;          // B, strips only
    double eps = 0.0;            // mollification width, 0 = sharp

    bool transversal_to(const UnstableCone& cone) const {
        return !contains_direction(cone, normal);
    }
};

inline void validate_indicator(const IndicatorSpec& spec, const GridSpec& grid) {
    if (static_cast<int>(spec.normal.size()) != grid.d)
        throw std::invalid_argument("make_indicator: normal dimension mismatch");
    double n2 = 0.0;
    for (double v : spec.normal) n2 += v * v;
    if (std::abs(n2 - 1.0) > 1e-9)
        throw std::invalid_argument("make_indicator: normal must be a unit vector");
    if (spec.eps < 0.0) throw std::invalid_argument("make_indicator: eps must be >= 0");
    if (spec.kind == IndicatorKind::strip) {
        if (!(spec.width > 0.0)) throw std::invalid_argument("make_indicator: strip width must be positive");
        if (std::abs(spec.offset) + spec.width > grid.L / 2.0)
            throw std::invalid_argument("make_indicator: strip exceeds the box");
    }
}

// C-infinity unit step with transition of width eps centered at 0.
inline double mollified_step(double tau, double eps) {
    if (eps <= 0.0) return tau > 0.0 ? 1.0 : 0.0;
    return smooth_step(tau / eps + 0.5);
}

inline GridFunction make_indicator(const IndicatorSpec& spec, const GridSpec& grid) {
    validate_indicator(spec, grid);
    GridFunction out(grid);
    std::vector<int> idx(grid.d);
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        grid.unflatten(i, idx.data());
        double tau = -spec.offset;
        for (int a = 0; a < grid.d; ++a) tau += grid.x(idx[a]) * spec.normal[a];
        double v = mollified_step(tau, spec.eps);
        if (spec.kind == IndicatorKind::strip) v *= mollified_step(spec.width - tau, spec.eps);
        out.values[i] = v;
    }
    return out;
}

}  // namespace aniso
