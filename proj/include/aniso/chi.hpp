#pragma once

// The C-infinity cutoff chi and the smooth step built from the same
// mollifier h(u) = exp(-1/u). chi is exactly 1 on [0,1] and exactly 0 on
// [2,inf); smooth_step rises from exactly 0 at u<=0 to exactly 1 at u>=1.

#include <cmath>
#include <stdexcept>

namespace aniso {

namespace detail {
inline double mollifier(double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }
}

inline double chi(double x) {
    if (x < 0.0) throw std::invalid_argument("chi: argument must be nonnegative");
    if (x <= 1.0) return 1.0;
    if (x >= 2.0) return 0.0;
    const double a = detail::mollifier(2.0 - x);
    const double b = detail::mollifier(x - 1.0);
    return a / (a + b);
}

inline double smooth_step(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double a = detail::mollifier(u);
    const double b = detail::mollifier(1.0 - u);
    return a / (a + b);
}

}  // namespace aniso
