#pragma once

// Adaptive Dormand-Prince 5(4) integration with dense output, event
// location and finite-time blow-up reporting, plus a fixed-step classical
// RK4 integrator used as an independent oracle in tests.

#include "epct/errors.hpp"
#include "epct/riccati.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace epct {

template <std::size_t N>
using Vec = std::array<double, N>;

struct IntegratorOptions {
    double rel_tol = 1e-9;
    double abs_tol = 1e-9;
    double dt_init = 1e-3;
    double dt_min = 1e-12;
    double dt_max = 0.1;
    /// Threshold on the monitored components' magnitude above which a step
    /// collapse is reported as blow-up instead of stiffness.
    double blowup_magnitude = 1e6;
    double t_end = 20.0;
    std::size_t max_steps = 10'000'000;

    /// Throws DomainError when the option set is inconsistent.
    void validate() const;
};

enum class TerminalKind { ReachedHorizon, BlowUp, CoefficientDomainEnd };

std::string to_string(TerminalKind kind);

struct TerminalStatus {
    TerminalKind kind = TerminalKind::ReachedHorizon;
    /// Blow-up bracket; NaN unless kind == BlowUp.
    double t_blow_lower = std::numeric_limits<double>::quiet_NaN();
    double t_blow_upper = std::numeric_limits<double>::quiet_NaN();

    double t_blow_mid() const { return 0.5 * (t_blow_lower + t_blow_upper); }
};

template <std::size_t N>
struct Trajectory {
    std::vector<double> t;
    std::vector<Vec<N>> y;
    TerminalStatus status;

    std::size_t size() const { return t.size(); }
    const Vec<N>& back() const { return y.back(); }
    double t_back() const { return t.back(); }
};

/// An ODE system. Only the first `monitored` components take part in the
/// blow-up magnitude test (the auxiliary B = e^t grows without being singular).
template <std::size_t N>
struct OdeSystem {
    std::function<Vec<N>(double, const Vec<N>&)> rhs;
    std::size_t monitored = N;
};

enum class EventDirection { Rising, Falling, Any };

template <std::size_t N>
struct EventSpec {
    std::function<double(double, const Vec<N>&)> predicate;
    EventDirection direction = EventDirection::Any;
    double refine_tol = 1e-10;
    std::string name;
};

template <std::size_t N>
struct EventRecord {
    std::size_t event_index = 0;
    /// Bracket [t_lo, t_hi] with t_hi - t_lo <= refine_tol across which the
    /// predicate changes sign; t is its midpoint.
    double t_lo = 0.0;
    double t_hi = 0.0;
    double t = 0.0;
    Vec<N> y{};
    bool rising = false;
};

template <std::size_t N>
struct IntegrationResult {
    Trajectory<N> trajectory;
    std::vector<EventRecord<N>> events;
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;
};

namespace detail {

template <std::size_t N>
bool all_finite(const Vec<N>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

template <std::size_t N>
double monitored_magnitude(const Vec<N>& y, std::size_t monitored) {
    double m = 0.0;
    for (std::size_t i = 0; i < std::min(monitored, N); ++i) m = std::max(m, std::abs(y[i]));
    return m;
}

template <std::size_t N>
std::vector<double> as_vector(const Vec<N>& y) {
    return std::vector<double>(y.begin(), y.end());
}

// y + h * sum_j c_j k_j
template <std::size_t N, std::size_t M>
Vec<N> combine(const Vec<N>& y, double h, const std::array<double, M>& c,
               const std::array<const Vec<N>*, M>& k) {
    Vec<N> out = y;
    for (std::size_t j = 0; j < M; ++j) {
        if (c[j] == 0.0) continue;
        for (std::size_t i = 0; i < N; ++i) out[i] += h * c[j] * (*k[j])[i];
    }
    return out;
}

/// Continuous extension of one accepted Dormand-Prince step (fourth order).
template <std::size_t N>
struct DenseStep {
    double t0 = 0.0;
    double h = 0.0;
    Vec<N> r1{}, r2{}, r3{}, r4{}, r5{};

    Vec<N> operator()(double t) const {
        const double th = (t - t0) / h;
        const double th1 = 1.0 - th;
        Vec<N> out{};
        for (std::size_t i = 0; i < N; ++i)
            out[i] = r1[i] + th * (r2[i] + th1 * (r3[i] + th * (r4[i] + th1 * r5[i])));
        return out;
    }
};

// Dormand-Prince 5(4) tableau.
inline constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
inline constexpr double a21 = 1.0 / 5.0;
inline constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
inline constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
inline constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                        a54 = -212.0 / 729.0;
inline constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                        a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
inline constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                        a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
inline constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                        e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
inline constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                        d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                        d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

template <std::size_t N>
bool event_fires(EventDirection dir, double g0, double g1, bool& rising) {
    const bool up = g0 < 0.0 && g1 >= 0.0;
    const bool down = g0 > 0.0 && g1 <= 0.0;
    rising = up;
    switch (dir) {
        case EventDirection::Rising: return up;
        case EventDirection::Falling: return down;
        case EventDirection::Any: return up || down;
    }
    return false;
}

// Time remaining before the monitored components diverge, from the local
// growth rate |y_i| / |y_i'| of the components above the blow-up threshold.
// For a Riccati singularity y ~ c (T - t)^{-p} this ratio is (T - t) / p.
template <std::size_t N>
double blowup_remaining(const Vec<N>& y, const Vec<N>& f, std::size_t monitored, double threshold) {
    double remaining = 0.0;
    for (std::size_t i = 0; i < std::min(monitored, N); ++i) {
        if (std::abs(y[i]) < threshold || f[i] == 0.0) continue;
        remaining = std::max(remaining, std::abs(y[i] / f[i]));
    }
    return 2.0 * remaining;
}

}  // namespace detail

/// Adaptive integration from t0 to opts.t_end.
///
/// Each accepted step satisfies |err_i| <= max(abs_tol, rel_tol |y_i|) for the
/// embedded fourth-order estimate. Blow-up is reported only when the
/// monitored magnitude exceeds opts.blowup_magnitude, is still growing, and
/// the step size has collapsed below dt_min; a collapse without growth
/// throws StiffnessError. A CoefficientDomainError from the right-hand side
/// ends the run with status CoefficientDomainEnd. A NaN derivative at an
/// accepted state throws InvalidStateError carrying that state.
template <std::size_t N>
IntegrationResult<N> integrate(const OdeSystem<N>& sys, const Vec<N>& init, const IntegratorOptions& opts,
                               std::span<const EventSpec<N>> events = {}, double t0 = 0.0) {
    using namespace detail;
    opts.validate();
    if (!all_finite(init)) throw InvalidStateError("non-finite initial state", t0, as_vector(init));
    if (!(opts.t_end > t0)) throw DomainError("t_end must exceed the initial time");

    IntegrationResult<N> out;
    auto& traj = out.trajectory;
    traj.t.push_back(t0);
    traj.y.push_back(init);

    double t = t0;
    Vec<N> y = init;
    Vec<N> k1;
    try {
        k1 = sys.rhs(t, y);
    } catch (const CoefficientDomainError&) {
        traj.status.kind = TerminalKind::CoefficientDomainEnd;
        return out;
    }
    if (!all_finite(k1)) throw InvalidStateError("right-hand side is not finite at the initial state", t, as_vector(y));

    std::vector<double> g_prev(events.size());
    for (std::size_t e = 0; e < events.size(); ++e) g_prev[e] = events[e].predicate(t, y);

    double h = std::min({opts.dt_init, opts.dt_max, opts.t_end - t0});
    double prev_mag = monitored_magnitude(y, sys.monitored);

    auto report_blowup = [&](const Vec<N>& f) {
        traj.status.kind = TerminalKind::BlowUp;
        traj.status.t_blow_lower = t;
        traj.status.t_blow_upper = t + blowup_remaining(y, f, sys.monitored, opts.blowup_magnitude);
        if (!(traj.status.t_blow_upper > t)) traj.status.t_blow_upper = std::numeric_limits<double>::infinity();
    };

    while (t < opts.t_end) {
        if (out.accepted_steps + out.rejected_steps >= opts.max_steps)
            throw StiffnessError("step budget exhausted", t);

        bool last = false;
        if (t + h >= opts.t_end || opts.t_end - (t + h) < opts.dt_min) {
            h = opts.t_end - t;
            last = true;
        }

        Vec<N> k2{}, k3{}, k4{}, k5{}, k6{}, k7{}, y_new{};
        double err = std::numeric_limits<double>::infinity();
        bool stages_ok = true;
        try {
            auto stage = [&](const Vec<N>& ys, double ts, Vec<N>& k) {
                if (!all_finite(ys)) return false;
                k = sys.rhs(ts, ys);
                return all_finite(k);
            };
            stages_ok = stage(combine<N, 1>(y, h, {a21}, {&k1}), t + c2 * h, k2) &&
                        stage(combine<N, 2>(y, h, {a31, a32}, {&k1, &k2}), t + c3 * h, k3) &&
                        stage(combine<N, 3>(y, h, {a41, a42, a43}, {&k1, &k2, &k3}), t + c4 * h, k4) &&
                        stage(combine<N, 4>(y, h, {a51, a52, a53, a54}, {&k1, &k2, &k3, &k4}), t + c5 * h, k5) &&
                        stage(combine<N, 5>(y, h, {a61, a62, a63, a64, a65}, {&k1, &k2, &k3, &k4, &k5}), t + h, k6);
            if (stages_ok) {
                y_new = combine<N, 6>(y, h, {a71, 0.0, a73, a74, a75, a76}, {&k1, &k2, &k3, &k4, &k5, &k6});
                stages_ok = stage(y_new, t + h, k7);
            }
        } catch (const CoefficientDomainError&) {
            traj.status.kind = TerminalKind::CoefficientDomainEnd;
            return out;
        }

        if (stages_ok) {
            err = 0.0;
            for (std::size_t i = 0; i < N; ++i) {
                const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
                const double sc = std::max(opts.abs_tol, opts.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i])));
                err = std::max(err, std::abs(e) / sc);
            }
            if (!std::isfinite(err)) err = std::numeric_limits<double>::infinity();
        }

        if (err <= 1.0) {
            const double t_new = last ? opts.t_end : t + h;

            if (!events.empty()) {
                DenseStep<N> dense;
                dense.t0 = t;
                dense.h = t_new - t;
                for (std::size_t i = 0; i < N; ++i) {
                    dense.r1[i] = y[i];
                    dense.r2[i] = y_new[i] - y[i];
                    dense.r3[i] = h * k1[i] - dense.r2[i];
                    dense.r4[i] = dense.r2[i] - h * k7[i] - dense.r3[i];
                    dense.r5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
                }
                std::vector<EventRecord<N>> found;
                for (std::size_t e = 0; e < events.size(); ++e) {
                    const auto& ev = events[e];
                    const double g1 = ev.predicate(t_new, y_new);
                    bool rising = false;
                    if (event_fires<N>(ev.direction, g_prev[e], g1, rising)) {
                        double lo = t, hi = t_new;
                        const double g_lo = g_prev[e];
                        while (hi - lo > ev.refine_tol) {
                            const double mid = 0.5 * (lo + hi);
                            if (mid <= lo || mid >= hi) break;
                            const double gm = ev.predicate(mid, dense(mid));
                            if ((gm < 0.0) == (g_lo < 0.0) && gm != 0.0) lo = mid;
                            else hi = mid;
                        }
                        EventRecord<N> rec;
                        rec.event_index = e;
                        rec.t_lo = lo;
                        rec.t_hi = hi;
                        rec.t = 0.5 * (lo + hi);
                        rec.y = dense(rec.t);
                        rec.rising = rising;
                        found.push_back(rec);
                    }
                    g_prev[e] = g1;
                }
                std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.t < b.t; });
                out.events.insert(out.events.end(), found.begin(), found.end());
            }

            t = t_new;
            y = y_new;
            k1 = k7;
            ++out.accepted_steps;
            traj.t.push_back(t);
            traj.y.push_back(y);

            const double mag = monitored_magnitude(y, sys.monitored);
            if (mag > 1e100) {
                report_blowup(k1);
                return out;
            }
            const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            const double h_next = std::min(h * factor, opts.dt_max);
            if (t < opts.t_end && h_next < opts.dt_min) {
                if (mag > opts.blowup_magnitude && mag >= prev_mag) {
                    report_blowup(k1);
                    return out;
                }
                throw StiffnessError("step size collapsed below dt_min without growth", t);
            }
            prev_mag = mag;
            h = h_next;
        } else {
            ++out.rejected_steps;
            const double factor = std::isfinite(err) ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.2;
            h *= std::min(factor, 0.9);
            if (h < opts.dt_min) {
                const double mag = monitored_magnitude(y, sys.monitored);
                if (mag > opts.blowup_magnitude && mag >= prev_mag) {
                    report_blowup(k1);
                    return out;
                }
                throw StiffnessError("step size collapsed below dt_min without growth", t);
            }
        }
    }
    traj.status.kind = TerminalKind::ReachedHorizon;
    return out;
}

/// Fixed-step classical fourth-order Runge-Kutta. No adaptivity, no events.
/// Samples every `record_stride` steps plus the final state.
template <std::size_t N>
Trajectory<N> integrate_fixed_oracle(const std::function<Vec<N>(double, const Vec<N>&)>& rhs, const Vec<N>& init,
                                     double dt, double t_end, std::size_t record_stride = 1) {
    if (!(dt > 0.0)) throw DomainError("oracle step must be positive");
    if (record_stride == 0) record_stride = 1;
    Trajectory<N> traj;
    double t = 0.0;
    Vec<N> y = init;
    traj.t.push_back(t);
    traj.y.push_back(y);
    const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
    for (std::size_t n = 0; n < steps; ++n) {
        const double h = std::min(dt, t_end - t);
        auto axpy = [](const Vec<N>& a, double s, const Vec<N>& b) {
            Vec<N> r;
            for (std::size_t i = 0; i < N; ++i) r[i] = a[i] + s * b[i];
            return r;
        };
        const Vec<N> k1 = rhs(t, y);
        const Vec<N> k2 = rhs(t + 0.5 * h, axpy(y, 0.5 * h, k1));
        const Vec<N> k3 = rhs(t + 0.5 * h, axpy(y, 0.5 * h, k2));
        const Vec<N> k4 = rhs(t + h, axpy(y, h, k3));
        Vec<N> y_new;
        for (std::size_t i = 0; i < N; ++i) y_new[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        if (!detail::all_finite(y_new))
            throw InvalidStateError("oracle produced a non-finite state", t, detail::as_vector(y));
        y = y_new;
        t = (n + 1 == steps) ? t_end : t + h;
        if ((n + 1) % record_stride == 0 || n + 1 == steps) {
            traj.t.push_back(t);
            traj.y.push_back(y);
        }
    }
    traj.status.kind = TerminalKind::ReachedHorizon;
    return traj;
}

// Component order: closed system [rho, d]; auxiliary [a, b, B].
inline Vec<2> to_vec(const State2& s) { return {s.rho, s.d}; }
inline Vec<3> to_vec(const AuxState3& s) { return {s.a, s.b, s.B}; }
inline State2 to_state2(const Vec<2>& v) { return {v[0], v[1]}; }
inline AuxState3 to_aux(const Vec<3>& v) { return {v[0], v[1], v[2]}; }

OdeSystem<2> ep_system(CoefficientModel A, PhysicalParams p);
OdeSystem<3> aux_system();

IntegrationResult<2> integrate_ep(const State2& init, const CoefficientModel& A, const PhysicalParams& p,
                                  const IntegratorOptions& opts, std::span<const EventSpec<2>> events = {});
IntegrationResult<3> integrate_aux(const AuxState3& init, const IntegratorOptions& opts,
                                   std::span<const EventSpec<3>> events = {});

}  // namespace epct
