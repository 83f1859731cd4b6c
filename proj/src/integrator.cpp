#include "epct/integrator.hpp"

namespace epct {

void IntegratorOptions::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw DomainError("tolerances must be positive");
    if (!(dt_min > 0.0) || !(dt_min <= dt_init) || !(dt_init <= dt_max))
        throw DomainError("step bounds must satisfy 0 < dt_min <= dt_init <= dt_max");
    if (!(blowup_magnitude > 0.0)) throw DomainError("blowup_magnitude must be positive");
    if (!std::isfinite(t_end)) throw DomainError("t_end must be finite");
}

std::string to_string(TerminalKind kind) {
    switch (kind) {
        case TerminalKind::ReachedHorizon: return "reached-horizon";
        case TerminalKind::BlowUp: return "blowup";
        case TerminalKind::CoefficientDomainEnd: return "coefficient-domain-end";
    }
    return "unknown";
}

OdeSystem<2> ep_system(CoefficientModel A, PhysicalParams p) {
    OdeSystem<2> sys;
    sys.rhs = [A = std::move(A), k = p.k(), cb = p.c_b()](double t, const Vec<2>& y) -> Vec<2> {
        const double rho = y[0];
        const double d = y[1];
        return {-rho * d, -0.5 * d * d + A(t) * rho * rho + k * (rho - cb)};
    };
    return sys;
}

OdeSystem<3> aux_system() {
    OdeSystem<3> sys;
    sys.rhs = [](double, const Vec<3>& y) -> Vec<3> {
        const double a = y[0];
        const double b = y[1];
        const double B = y[2];
        return {-b * a, -0.5 * b * b - B * a * a - a + 1.0, B};
    };
    sys.monitored = 2;
    return sys;
}

IntegrationResult<2> integrate_ep(const State2& init, const CoefficientModel& A, const PhysicalParams& p,
                                  const IntegratorOptions& opts, std::span<const EventSpec<2>> events) {
    if (init.rho < 0.0) throw InvalidStateError("negative initial density");
    return integrate<2>(ep_system(A, p), to_vec(init), opts, events);
}

IntegrationResult<3> integrate_aux(const AuxState3& init, const IntegratorOptions& opts,
                                   std::span<const EventSpec<3>> events) {
    if (!(init.a > 0.0) || !(init.B >= 1.0))
        throw InvalidStateError("auxiliary state requires a > 0 and B >= 1");
    return integrate<3>(aux_system(), to_vec(init), opts, events);
}

}  // namespace epct
