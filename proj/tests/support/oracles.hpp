#pragma once

// Independent reference computations used by the unit and acceptance tests.
// Nothing here calls into the library code it is checking.

#include <cmath>
#include <cstdint>
#include <numbers>

namespace oracle {

/// Radical inverse in the given base (Halton component).
inline double halton(std::uint32_t index, std::uint32_t base) {
    double f = 1.0, r = 0.0;
    for (std::uint32_t i = index; i > 0; i /= base) {
        f /= base;
        r += f * static_cast<double>(i % base);
    }
    return r;
}

/// log of (1 - x) / (2 x^2), which is the escape-time expression rearranged.
inline double escape(double x) { return std::log((1.0 - x) / (2.0 * x * x)); }

/// Omega^M rebuilt from the b0 >= 0 admissibility inequality:
/// 0 < rho < 1/2, 0 < d <= 1/2, (1/2 - d) / (3/8 - rho/2) <= escape(rho).
inline bool middle_region(double rho, double d) {
    if (!(rho > 0.0 && rho < 0.5 && d > 0.0 && d <= 0.5)) return false;
    return (0.5 - d) <= (0.375 - 0.5 * rho) * escape(rho);
}

/// Omega^B rebuilt from the b0 < 0 admissibility inequality.
inline bool lower_region(double rho, double d) {
    if (!(rho > 0.0 && rho < 0.5 && d < 0.0 && d > rho - 0.5)) return false;
    const double g = rho - d;
    return (0.5 - d) <= (0.375 - 0.5 * g) * escape(g);
}

/// max_r of the free-space radial field for rho = amp exp(-r^2):
/// enclosed mass m(r) = pi amp (1 - e^{-r^2}), field m / (2 pi r).
/// Golden-section search on [0.2, 5].
inline double gaussian_peak_field(double amp) {
    auto field = [amp](double r) { return 0.5 * amp * (1.0 - std::exp(-r * r)) / r; };
    double lo = 0.2, hi = 5.0;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int i = 0; i < 200; ++i) {
        const double a = hi - g * (hi - lo);
        const double b = lo + g * (hi - lo);
        if (field(a) > field(b))
            hi = b;
        else
            lo = a;
    }
    return field(0.5 * (lo + hi));
}

}  // namespace oracle
