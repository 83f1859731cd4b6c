#include "epct/comparison.hpp"

#include "epct/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace epct {

void check_envelope(const CoefficientModel& A, double t_end, std::optional<double> gamma, double samples_per_unit) {
    if (!(t_end > 0.0)) throw AdmissibilityError("envelope check needs t_end > 0");
    if (auto dom = A.domain(); dom && (dom->first > 0.0 || dom->second < t_end)) {
        std::ostringstream msg;
        msg << "coefficient is defined on [" << dom->first << ", " << dom->second << "] but the run needs [0, " << t_end
            << "]";
        throw AdmissibilityError(msg.str());
    }
    if (!gamma) gamma = A.upper_clamp();
    const auto n = static_cast<std::size_t>(std::ceil(samples_per_unit * t_end));
    for (std::size_t i = 0; i <= n; ++i) {
        const double t = std::min(t_end, t_end * static_cast<double>(i) / static_cast<double>(n));
        const double a = A(t);
        if (!(a >= -std::exp(t))) {
            std::ostringstream msg;
            msg << "A(" << t << ") = " << a << " falls below -e^t";
            throw AdmissibilityError(msg.str());
        }
        if (gamma && a > *gamma) {
            std::ostringstream msg;
            msg << "A(" << t << ") = " << a << " exceeds the upper bound " << *gamma;
            throw AdmissibilityError(msg.str());
        }
    }
}

CoupledRun run_coupled(const State2& ep_init, const AuxState3& aux_init, const CoefficientModel& A, double t_end,
                       const CoupledOptions& opts) {
    if (!(aux_init.b < ep_init.d)) throw AdmissibilityError("comparison requires b(0) < d(0)");
    if (!(ep_init.rho > 0.0 && ep_init.rho < aux_init.a))
        throw AdmissibilityError("comparison requires 0 < rho(0) < a(0)");
    if (!(aux_init.B >= 1.0)) throw AdmissibilityError("comparison requires B(0) >= 1");
    check_envelope(A, t_end, opts.gamma, opts.envelope_samples_per_unit);

    OdeSystem<5> sys;
    sys.rhs = [A](double t, const Vec<5>& y) -> Vec<5> {
        const double rho = y[0], d = y[1], a = y[2], b = y[3], B = y[4];
        return {-rho * d, -0.5 * d * d + A(t) * rho * rho - rho + 1.0, -b * a, -0.5 * b * b - B * a * a - a + 1.0, B};
    };
    sys.monitored = 4;

    IntegratorOptions iopts = opts.integrator;
    iopts.t_end = t_end;
    const Vec<5> init{ep_init.rho, ep_init.d, aux_init.a, aux_init.b, aux_init.B};
    auto res = integrate<5>(sys, init, iopts);

    CoupledRun run;
    run.status = res.trajectory.status;
    run.t = std::move(res.trajectory.t);
    run.ep.reserve(run.t.size());
    run.aux.reserve(run.t.size());
    for (std::size_t i = 0; i < res.trajectory.y.size(); ++i) {
        const auto& y = res.trajectory.y[i];
        run.ep.push_back({y[0], y[1]});
        run.aux.push_back({y[2], y[3], y[4]});
        const bool ok = y[3] < y[1] + opts.ordering_slack && y[0] > 0.0 && y[0] < y[2] + opts.ordering_slack;
        if (!ok && run.ordering_ok) {
            run.ordering_ok = false;
            run.first_violation = i;
        }
    }
    return run;
}

double d_upper_bound(double rho_M, double gamma, double d0) {
    if (!(rho_M > 0.0)) throw DomainError("d_upper_bound requires rho_M > 0");
    return std::max(d0, std::sqrt(2.0 * std::max(1.0, gamma * rho_M * rho_M - rho_M + 1.0)));
}

CertifyResult certify_global(double rho0, double d0, const CoefficientModel& A, double t_verify,
                             const PhysicalParams& p, const CoupledOptions& opts) {
    if (p.k() > 0.0) throw AdmissibilityError("certification is unavailable for repulsive forcing (k > 0)");
    if (p.k() != -1.0 || p.c_b() != 1.0)
        throw AdmissibilityError("certification is implemented for k = -1, c_b = 1 only");
    if (!std::isfinite(rho0) || !std::isfinite(d0)) throw DomainError("certify_global needs finite inputs");
    check_envelope(A, t_verify, opts.gamma, opts.envelope_samples_per_unit);

    if (!(rho0 > 0.0)) return NotCertified{"initial density must be positive"};
    const double base = std::min(0.5 - rho0, 1.0);
    if (!(base > 0.0)) return NotCertified{"initial density is not below 1/2"};

    double eps = 0.0;
    for (int j = 1; j <= kEpsilonLadderRungs; ++j) {
        const double candidate = std::ldexp(base, -j);
        if (in_open_region(rho0 + candidate, d0 - candidate)) {
            eps = candidate;
            break;
        }
    }
    if (eps == 0.0) return NotCertified{"no epsilon on the ladder puts the shifted start in the open region"};

    Certificate cert;
    cert.rho0 = rho0;
    cert.d0 = d0;
    cert.epsilon = eps;
    cert.aux_start = {rho0 + eps, d0 - eps, 1.0};
    cert.aux_region = classify(cert.aux_start.a, cert.aux_start.b);
    cert.verified_horizon = t_verify;

    const auto run = run_coupled({rho0, d0}, cert.aux_start, A, t_verify, opts);
    cert.ordering_ok = run.ordering_ok;
    cert.numeric_status = run.status.kind;
    cert.rho_sup = 0.0;
    cert.d_min = run.ep.front().d;
    cert.d_max = run.ep.front().d;
    for (const auto& s : run.ep) {
        cert.rho_sup = std::max(cert.rho_sup, s.rho);
        cert.d_min = std::min(cert.d_min, s.d);
        cert.d_max = std::max(cert.d_max, s.d);
    }
    return cert;
}

}  // namespace epct
