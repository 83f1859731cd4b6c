#pragma once

// Comparison between the closed system (k = -1, c_b = 1) and the auxiliary
// system with B = e^t. If b(0) < d(0) and 0 < rho(0) < a(0) and
// -e^t <= A(t), the ordering persists for all time, so the auxiliary
// bounds transfer to (rho, d). certify_global builds on this.

#include "epct/integrator.hpp"
#include "epct/riccati.hpp"
#include "epct/thresholds.hpp"

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace epct {

struct CoupledOptions {
    IntegratorOptions integrator{};
    /// Slack allowed in the strict orderings b < d and rho < a.
    double ordering_slack = 0.0;
    /// Density of the sampled envelope check on [0, t_end].
    double envelope_samples_per_unit = 1000.0;
    /// Upper envelope for A; defaults to A's own upper clamp when unset.
    std::optional<double> gamma;
};

struct CoupledRun {
    /// Shared sample times of both trajectories.
    std::vector<double> t;
    std::vector<State2> ep;
    std::vector<AuxState3> aux;
    bool ordering_ok = true;
    /// Index of the first sample violating the ordering, if any.
    std::size_t first_violation = std::numeric_limits<std::size_t>::max();
    TerminalStatus status;
};

/// Samples -e^t <= A(t) <= gamma on [0, t_end]. Throws AdmissibilityError on
/// violation or when A is not defined on the whole interval.
void check_envelope(const CoefficientModel& A, double t_end, std::optional<double> gamma,
                    double samples_per_unit = 1000.0);

/// Integrates both systems as one stacked state [rho, d, a, b, B] so they
/// share every step. Throws AdmissibilityError when the initial ordering or
/// the envelope fails.
CoupledRun run_coupled(const State2& ep_init, const AuxState3& aux_init, const CoefficientModel& A, double t_end,
                       const CoupledOptions& opts = {});

/// Upper bound on d when rho <= rho_M and A <= gamma:
/// max{d0, sqrt(2 max{1, gamma rho_M^2 - rho_M + 1})}.
double d_upper_bound(double rho_M, double gamma, double d0);

struct Certificate {
    double rho0 = 0.0;
    double d0 = 0.0;
    double epsilon = 0.0;
    /// Shifted auxiliary start (rho0 + epsilon, d0 - epsilon, 1) and its region.
    AuxState3 aux_start{};
    Region aux_region = Region::Outside;
    /// Horizon of the numerical sanity run; the bound itself holds for all t.
    double verified_horizon = 0.0;
    double rho_sup = 0.0;
    double d_min = 0.0;
    double d_max = 0.0;
    bool ordering_ok = false;
    TerminalKind numeric_status = TerminalKind::ReachedHorizon;
};

struct NotCertified {
    std::string reason;
};

using CertifyResult = std::variant<Certificate, NotCertified>;

/// Number of rungs in the epsilon ladder 2^-j min(1/2 - rho0, 1), j = 1..20.
inline constexpr int kEpsilonLadderRungs = 20;

/// Searches the epsilon ladder for the largest epsilon placing
/// (rho0 + epsilon, d0 - epsilon) in the open region, then runs the coupled
/// systems to t_verify as a numerical check. Only k = -1, c_b = 1 is
/// supported; repulsive forcing throws AdmissibilityError.
CertifyResult certify_global(double rho0, double d0, const CoefficientModel& A, double t_verify,
                             const PhysicalParams& p = {}, const CoupledOptions& opts = {});

}  // namespace epct
