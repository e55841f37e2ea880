#pragma once

// Resolution-sweep boundedness classifier: least-squares slope of
// log2(value) against log2(N). The thresholds are conventions, echoed in
// every output file.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace aniso {

inline constexpr double kBoundedSlope = 0.05;
inline constexpr double kDivergentSlope = 0.2;

enum class Verdict { bounded, divergent, inconclusive };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::bounded: return "bounded";
        case Verdict::divergent: return "divergent";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

struct SweepClassification {
    double slope = 0.0;
    Verdict verdict = Verdict::inconclusive;
};

inline SweepClassification classify_boundedness(const std::vector<std::pair<int, double>>& series) {
    if (series.size() < 3)
        throw std::invalid_argument("classify_boundedness: need at least 3 resolutions");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [N, v] : series) {
        if (!(v > 0.0))
            throw std::invalid_argument("classify_boundedness: values must be positive");
        const double x = std::log2(static_cast<double>(N));
        const double y = std::log2(v);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(series.size());
    SweepClassification c;
    c.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    c.verdict = c.slope < kBoundedSlope
                    ? Verdict::bounded
                    : (c.slope > kDivergentSlope ? Verdict::divergent : Verdict::inconclusive);
    return c;
}

}  // namespace aniso
