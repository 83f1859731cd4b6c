#include "epct/riccati.hpp"

#include "epct/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace epct {

namespace {

bool finite(double x) { return std::isfinite(x); }

}  // namespace

PhysicalParams::PhysicalParams(double k, double c_b) : k_(k), c_b_(c_b) {
    if (!finite(k) || k == 0.0) throw DomainError("forcing constant k must be finite and nonzero");
    if (!finite(c_b) || c_b < 0.0) throw DomainError("background density c_b must be finite and >= 0");
}

FlowInvariants::FlowInvariants(double rho0, double omega0, double eta0, double xi0)
    : rho0_(rho0), omega0_(omega0), eta0_(eta0), xi0_(xi0) {
    if (!(rho0 > 0.0) || !finite(rho0))
        throw NonVacuumError("initial density must be strictly positive (non-vacuum)");
    if (!finite(omega0) || !finite(eta0) || !finite(xi0))
        throw InvalidStateError("non-finite flow invariant");
}

CoefficientModel CoefficientModel::constant(double value) {
    if (!finite(value)) throw DomainError("constant coefficient must be finite");
    return CoefficientModel(Constant{value});
}

CoefficientModel CoefficientModel::exponential_envelope(double alpha, double beta) {
    if (!(alpha > 0.0) || !(beta > 0.0) || !finite(alpha) || !finite(beta))
        throw DomainError("exponential envelope needs alpha > 0 and beta > 0");
    return CoefficientModel(ExponentialEnvelope{alpha, beta});
}

CoefficientModel CoefficientModel::tabulated(std::vector<double> times, std::vector<double> values) {
    if (times.size() < 2 || times.size() != values.size())
        throw DomainError("tabulated coefficient needs >= 2 samples and matching lengths");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!finite(times[i]) || !finite(values[i]))
            throw DomainError("tabulated coefficient samples must be finite");
        if (i > 0 && !(times[i] > times[i - 1]))
            throw DomainError("tabulated coefficient times must be strictly increasing");
    }
    return CoefficientModel(Tabulated{std::make_shared<const std::vector<double>>(std::move(times)),
                                      std::make_shared<const std::vector<double>>(std::move(values))});
}

CoefficientModel CoefficientModel::callback(std::function<double(double)> fn, std::string label) {
    if (!fn) throw DomainError("callback coefficient needs a callable");
    return CoefficientModel(Callback{std::move(fn), std::move(label)});
}

CoefficientModel CoefficientModel::with_upper_clamp(double gamma) const {
    if (!finite(gamma)) throw DomainError("upper clamp must be finite");
    CoefficientModel out = *this;
    out.upper_clamp_ = gamma;
    return out;
}

std::optional<std::pair<double, double>> CoefficientModel::domain() const {
    if (const auto* tab = std::get_if<Tabulated>(&variant_))
        return std::make_pair(tab->times->front(), tab->times->back());
    return std::nullopt;
}

double CoefficientModel::operator()(double t) const {
    if (!(t >= 0.0)) throw CoefficientDomainError("coefficient queried at negative or NaN time");

    double value = std::visit(
        [t](const auto& v) -> double {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, Constant>) {
                return v.value;
            } else if constexpr (std::is_same_v<V, ExponentialEnvelope>) {
                return -v.alpha * std::exp(v.beta * t);
            } else if constexpr (std::is_same_v<V, Tabulated>) {
                const auto& ts = *v.times;
                const auto& vs = *v.values;
                if (t < ts.front() || t > ts.back()) {
                    std::ostringstream msg;
                    msg << "tabulated coefficient queried at t=" << t << " outside [" << ts.front()
                        << ", " << ts.back() << "]";
                    throw CoefficientDomainError(msg.str());
                }
                auto hi = std::upper_bound(ts.begin(), ts.end(), t);
                if (hi == ts.end()) return vs.back();
                const std::size_t j = static_cast<std::size_t>(hi - ts.begin());
                const std::size_t i = j - 1;
                const double w = (t - ts[i]) / (ts[j] - ts[i]);
                return vs[i] + w * (vs[j] - vs[i]);
            } else {
                return v.fn(t);
            }
        },
        variant_);

    if (upper_clamp_ && value > *upper_clamp_) value = *upper_clamp_;
    return value;
}

std::string CoefficientModel::describe() const {
    std::ostringstream os;
    std::visit(
        [&os](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, Constant>) {
                os << "constant(" << v.value << ")";
            } else if constexpr (std::is_same_v<V, ExponentialEnvelope>) {
                os << "exponential(alpha=" << v.alpha << ", beta=" << v.beta << ")";
            } else if constexpr (std::is_same_v<V, Tabulated>) {
                os << "tabulated(" << v.times->size() << " samples on [" << v.times->front() << ", "
                   << v.times->back() << "])";
            } else {
                os << "callback(" << v.label << ")";
            }
        },
        variant_);
    if (upper_clamp_) os << " clamped at " << *upper_clamp_;
    return os.str();
}

double eval_A(const CoefficientModel& A, double t) { return A(t); }

double gamma_upper_bound(const FlowInvariants& inv) {
    const double r = inv.omega0() / inv.rho0();
    return 0.5 * r * r;
}

double eval_A0(const FlowInvariants& inv) {
    const double w = inv.omega0() / inv.rho0();
    const double e = inv.eta0() / inv.rho0();
    const double x = inv.xi0() / inv.rho0();
    return 0.5 * (w * w - e * e - x * x);
}

Deriv2 eval_rhs_ep(const State2& s, double t, const CoefficientModel& A, const PhysicalParams& p) {
    if (!finite(s.rho) || !finite(s.d)) throw InvalidStateError("non-finite closed-system state", t);
    const double a = A(t);
    return Deriv2{-s.rho * s.d, -0.5 * s.d * s.d + a * s.rho * s.rho + p.k() * (s.rho - p.c_b())};
}

Deriv3 eval_rhs_aux(const AuxState3& s) {
    if (!finite(s.a) || !finite(s.b) || !finite(s.B))
        throw InvalidStateError("non-finite auxiliary state");
    return Deriv3{-s.b * s.a, -0.5 * s.b * s.b - s.B * s.a * s.a - s.a + 1.0, s.B};
}

}  // namespace epct
