#pragma once

// Sub-critical regions for the closed system with A(t) >= -e^t (k = -1,
// c_b = 1), the invariant space of the auxiliary system, and the escape
// times and rates that bound how fast trajectories enter it.
//
// All logarithms are natural. Region predicates evaluate the closed-form
// inequalities exactly as written, with no tolerance.

#include "epct/riccati.hpp"

#include <string>
#include <string_view>

namespace epct {

enum class Region { OmegaT, OmegaM, OmegaB, Outside };

std::string to_string(Region r);

enum class Surface { S1, S2 };

struct SurfaceFlux {
    Surface surface;
    double value;
};

/// 0 < rho < 1/2, d >= 1/2.
bool in_omega_T(double rho, double d);

/// 0 < rho < 1/2, max{0, 1/2 - (3/8 - rho/2) t*(rho)} < d <= 1/2.
bool in_omega_M(double rho, double d);

/// 0 < rho < 1/2, rho - 1/2 < d < 0, (1/2 - d) / (3/8 - (rho - d)/2) <= t**(rho, d).
bool in_omega_B(double rho, double d);

/// First matching region in the order T, M, B; Outside otherwise.
Region classify(double rho, double d);

/// Membership in the open interior of the union of the three regions.
///
/// The union's interior is
///   0 < rho < 1/2 and either
///     d >= 0 and 1/2 - d < (3/8 - rho/2) t*(rho), or
///     rho - 1/2 < d < 0 and (1/2 - d) / (3/8 - (rho - d)/2) < t**(rho, d).
/// The line d = 0 lies inside the union wherever both branches agree, so it
/// is interior there even though neither closed region contains it.
bool in_open_region(double rho, double d);

/// 1/2 (1/a^2 - 1/a): the value of B on the surface S1 = 0.
double s1_surface_B(double a);

/// 0 < a <= 1/2, b >= 1/2, B <= s1_surface_B(a).
bool in_omega0(const AuxState3& s);

/// grad S1 . l = b/a^2 - b/(2a) - B. Throws DomainError for a <= 0.
SurfaceFlux s1_flux(const AuxState3& s);

/// grad S2 . l = -b^2/2 - B a^2 - a + 1. Throws DomainError for a <= 0.
SurfaceFlux s2_flux(const AuxState3& s);

/// log[1/2 (1/a0^2 - 1/a0)], requires 0 < a0 < 1/2.
double t_star(double a0);

/// log[1/2 (1/(a0-b0)^2 - 1/(a0-b0))], requires 0 < a0 < 1/2 and a0 - 1/2 < b0 < 0.
double t_star_star(double a0, double b0);

/// Lower bound on db/dt before the trajectory reaches b = 1/2:
/// 3/8 - a0/2 for 0 <= b0 <= 1/2, 3/8 - (a0 - b0)/2 for b0 < 0.
double b_lower_rate(double a0, double b0);

/// Whether b reaches 1/2 (at the latest rate b_lower_rate) no later than the
/// escape time t* (b0 >= 0) or t** (b0 < 0). True for b0 >= 1/2.
bool admissibility_condition(double a0, double b0);

}  // namespace epct
