#include "epct/thresholds.hpp"

#include "epct/errors.hpp"

#include <algorithm>
#include <cmath>

namespace epct {

namespace {

// log[1/2 (1/x^2 - 1/x)] without domain checks.
double escape_log(double x) { return std::log(0.5 * (1.0 / (x * x) - 1.0 / x)); }

bool finite2(double a, double b) { return std::isfinite(a) && std::isfinite(b); }

}  // namespace

std::string to_string(Region r) {
    switch (r) {
        case Region::OmegaT: return "OmegaT";
        case Region::OmegaM: return "OmegaM";
        case Region::OmegaB: return "OmegaB";
        case Region::Outside: return "Outside";
    }
    return "Outside";
}

bool in_omega_T(double rho, double d) { return rho > 0.0 && rho < 0.5 && d >= 0.5; }

bool in_omega_M(double rho, double d) {
    if (!finite2(rho, d) || !(rho > 0.0 && rho < 0.5)) return false;
    const double lower = std::max(0.0, 0.5 - (0.375 - 0.5 * rho) * escape_log(rho));
    return lower < d && d <= 0.5;
}

bool in_omega_B(double rho, double d) {
    if (!finite2(rho, d) || !(rho > 0.0 && rho < 0.5)) return false;
    if (!(rho - 0.5 < d && d < 0.0)) return false;
    const double gap = rho - d;
    return (0.5 - d) / (0.375 - 0.5 * gap) <= escape_log(gap);
}

Region classify(double rho, double d) {
    if (in_omega_T(rho, d)) return Region::OmegaT;
    if (in_omega_M(rho, d)) return Region::OmegaM;
    if (in_omega_B(rho, d)) return Region::OmegaB;
    return Region::Outside;
}

bool in_open_region(double rho, double d) {
    if (!finite2(rho, d) || !(rho > 0.0 && rho < 0.5)) return false;
    if (d >= 0.0) return 0.5 - d < (0.375 - 0.5 * rho) * escape_log(rho);
    if (!(d > rho - 0.5)) return false;
    const double gap = rho - d;
    return (0.5 - d) / (0.375 - 0.5 * gap) < escape_log(gap);
}

double s1_surface_B(double a) {
    if (!(a > 0.0)) throw DomainError("S1 surface requires a > 0");
    return 0.5 * (1.0 / (a * a) - 1.0 / a);
}

bool in_omega0(const AuxState3& s) {
    if (!(s.a > 0.0 && s.a <= 0.5) || !(s.b >= 0.5)) return false;
    return s.B <= s1_surface_B(s.a);
}

SurfaceFlux s1_flux(const AuxState3& s) {
    if (!(s.a > 0.0)) throw DomainError("s1_flux requires a > 0");
    return {Surface::S1, s.b / (s.a * s.a) - s.b / (2.0 * s.a) - s.B};
}

SurfaceFlux s2_flux(const AuxState3& s) {
    if (!(s.a > 0.0)) throw DomainError("s2_flux requires a > 0");
    return {Surface::S2, -0.5 * s.b * s.b - s.B * s.a * s.a - s.a + 1.0};
}

double t_star(double a0) {
    if (!(a0 > 0.0 && a0 < 0.5)) throw DomainError("t_star requires 0 < a0 < 1/2");
    return escape_log(a0);
}

double t_star_star(double a0, double b0) {
    if (!(a0 > 0.0 && a0 < 0.5)) throw DomainError("t_star_star requires 0 < a0 < 1/2");
    if (!(a0 - 0.5 < b0 && b0 < 0.0)) throw DomainError("t_star_star requires a0 - 1/2 < b0 < 0");
    return escape_log(a0 - b0);
}

double b_lower_rate(double a0, double b0) {
    if (!(a0 > 0.0 && a0 < 0.5)) throw DomainError("b_lower_rate requires 0 < a0 < 1/2");
    if (!(b0 <= 0.5)) throw DomainError("b_lower_rate requires b0 <= 1/2");
    if (b0 >= 0.0) return 0.375 - 0.5 * a0;
    if (!(a0 - b0 < 0.5)) throw DomainError("b_lower_rate requires a0 - b0 < 1/2 when b0 < 0");
    return 0.375 - 0.5 * (a0 - b0);
}

bool admissibility_condition(double a0, double b0) {
    if (!(a0 > 0.0 && a0 < 0.5)) throw DomainError("admissibility requires 0 < a0 < 1/2");
    if (!std::isfinite(b0)) throw DomainError("admissibility requires finite b0");
    if (b0 >= 0.5) return true;
    if (b0 >= 0.0) return (0.5 - b0) / b_lower_rate(a0, b0) <= t_star(a0);
    if (!(b0 > a0 - 0.5)) throw DomainError("admissibility requires b0 > a0 - 1/2");
    return (0.5 - b0) / b_lower_rate(a0, b0) <= t_star_star(a0, b0);
}

}  // namespace epct
