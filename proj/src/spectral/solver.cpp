#include "epct/spectral/solver.hpp"

#include "epct/csv.hpp"
#include "epct/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace epct::spectral {

std::string to_string(RunStatus s) {
    switch (s) {
        case RunStatus::Completed: return "completed";
        case RunStatus::PositivityFailure: return "positivity-failure";
        case RunStatus::StepSizeFailure: return "step-size-failure";
    }
    return "unknown";
}

struct EulerPoissonSolver::StageSpectra {
    Spectrum rho;
    Spectrum u1;
    Spectrum u2;
};

namespace {

Complex ik1(double a, double) { return {0.0, a}; }
Complex ik2(double, double b) { return {0.0, b}; }

struct TracerRate {
    double x1, x2, i1, i2;
};

}  // namespace

EulerPoissonSolver::EulerPoissonSolver(const Grid& grid, const PhysicalParams& params, SolverOptions opts)
    : grid_(grid), params_(params), opts_(opts), ops_(grid) {
    if (!(opts_.cfl > 0.0)) throw DomainError("cfl must be positive");
    if (!(opts_.positivity_error <= opts_.positivity_warn)) throw DomainError("positivity error limit must not exceed the warning limit");
}

void EulerPoissonSolver::project(PdeState& s) const {
    for (ScalarField* f : {&s.rho, &s.u.u1, &s.u.u2}) {
        Spectrum sp = ops_.forward(*f);
        ops_.dealias(sp);
        *f = ops_.inverse(sp);
    }
}

double EulerPoissonSolver::max_stable_dt(const VectorField& u) const {
    const double speed = u.max_speed();
    if (speed == 0.0) return std::numeric_limits<double>::infinity();
    return opts_.cfl * grid_.dx() / speed;
}

EulerPoissonSolver::StageSpectra EulerPoissonSolver::spectra(const ScalarField& rho, const VectorField& u) const {
    StageSpectra sp{ops_.forward(rho), ops_.forward(u.u1), ops_.forward(u.u2)};
    ops_.dealias(sp.rho);
    ops_.dealias(sp.u1);
    ops_.dealias(sp.u2);
    return sp;
}

void EulerPoissonSolver::rhs(const ScalarField& rho, const VectorField& u, const StageSpectra& sp, ScalarField& rho_t,
                             VectorField& u_t) const {
    auto grad = [&](const Spectrum& s, int axis) {
        Spectrum c = s;
        ops_.differentiate(c, axis);
        return ops_.inverse(c);
    };
    const ScalarField u1_x1 = grad(sp.u1, 0);
    const ScalarField u1_x2 = grad(sp.u1, 1);
    const ScalarField u2_x1 = grad(sp.u2, 0);
    const ScalarField u2_x2 = grad(sp.u2, 1);

    const std::size_t n = grid_.size();
    ScalarField flux1(grid_), flux2(grid_), adv1(grid_), adv2(grid_);
    {
        const auto r = rho.data();
        const auto a = u.u1.data();
        const auto b = u.u2.data();
        const auto a1 = u1_x1.data(), a2 = u1_x2.data(), b1 = u2_x1.data(), b2 = u2_x2.data();
        auto f1 = flux1.data(), f2 = flux2.data(), v1 = adv1.data(), v2 = adv2.data();
        for (std::size_t p = 0; p < n; ++p) {
            f1[p] = r[p] * a[p];
            f2[p] = r[p] * b[p];
            v1[p] = a[p] * a1[p] + b[p] * a2[p];
            v2[p] = a[p] * b1[p] + b[p] * b2[p];
        }
    }

    Spectrum div = ops_.forward(flux1);
    ops_.differentiate(div, 0);
    {
        Spectrum g = ops_.forward(flux2);
        ops_.differentiate(g, 1);
        auto& dc = div.coeffs();
        const auto& gc = g.coeffs();
        for (std::size_t p = 0; p < dc.size(); ++p) dc[p] = -(dc[p] + gc[p]);
    }
    ops_.dealias(div);
    rho_t = ops_.inverse(div);

    // k grad Delta^{-1} rho; the mean of rho (and c_b with it) drops out.
    const double k = params_.k();
    auto force = [&](const Spectrum& adv_hat, int axis) {
        Spectrum out = adv_hat;
        const int half = grid_.n() / 2 + 1;
        for (int j = 0; j < grid_.n(); ++j) {
            for (int m1 = 0; m1 < half; ++m1) {
                const double a = ops_.k1(m1), b = ops_.k2(j);
                const double kk = a * a + b * b;
                Complex f = 0.0;
                if (kk != 0.0 && m1 != grid_.n() / 2 && j != grid_.n() / 2)
                    f = Complex(0.0, axis == 0 ? a : b) * (-k / kk) * sp.rho(m1, j);
                out(m1, j) = f - adv_hat(m1, j);
            }
        }
        ops_.dealias(out);
        return ops_.inverse(out);
    };
    u_t.u1 = force(ops_.forward(adv1), 0);
    u_t.u2 = force(ops_.forward(adv2), 1);
}

PointSample EulerPoissonSolver::sample(const StageSpectra& sp, const Point& x) const {
    const PointEvaluator at(ops_, x);
    const double k = params_.k();
    PointSample q;
    q.rho = at(sp.rho);
    q.u1 = at(sp.u1);
    q.u2 = at(sp.u2);
    const double a11 = at(sp.u1, ik1), a12 = at(sp.u1, ik2);
    const double a21 = at(sp.u2, ik1), a22 = at(sp.u2, ik2);
    q.d = a11 + a22;
    q.omega = a21 - a12;
    q.eta = a11 - a22;
    q.xi = a12 + a21;
    q.f1 = at(sp.rho, [k](double a, double b) {
        const double kk = a * a + b * b;
        return Complex(kk == 0.0 ? 0.0 : k * (a * a - b * b) / kk, 0.0);
    });
    q.f2 = at(sp.rho, [k](double a, double b) {
        const double kk = a * a + b * b;
        return Complex(kk == 0.0 ? 0.0 : 2.0 * k * a * b / kk, 0.0);
    });
    return q;
}

PointSample EulerPoissonSolver::sample(const PdeState& s, const Point& x) const {
    return sample(spectra(s.rho, s.u), x);
}

void EulerPoissonSolver::step(PdeState& s, double dt, std::vector<Tracer>* tracers,
                              std::vector<std::string>* warnings) const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw StepSizeError("time step must be positive and finite");
    const double limit = max_stable_dt(s.u);
    if (dt > limit) {
        std::ostringstream msg;
        msg << "dt = " << dt << " exceeds the advective bound " << limit << " at t = " << s.t;
        throw StepSizeError(msg.str());
    }

    static constexpr std::array<double, 4> stage_c{0.0, 0.5, 0.5, 1.0};
    static constexpr std::array<double, 4> weight{1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0};
    const std::size_t ntr = tracers ? tracers->size() : 0;

    ScalarField rho_acc = s.rho;
    VectorField u_acc = s.u;
    std::vector<Tracer> tr_acc = tracers ? *tracers : std::vector<Tracer>{};

    ScalarField rho_stage = s.rho;
    VectorField u_stage = s.u;
    ScalarField rho_t(grid_);
    VectorField u_t(grid_);
    std::vector<TracerRate> tr_rate(ntr);

    for (int st = 0; st < 4; ++st) {
        if (st > 0) {
            rho_stage = s.rho;
            rho_stage.axpy(stage_c[st] * dt, rho_t);
            u_stage = s.u;
            u_stage.u1.axpy(stage_c[st] * dt, u_t.u1);
            u_stage.u2.axpy(stage_c[st] * dt, u_t.u2);
        }
        const StageSpectra sp = spectra(rho_stage, u_stage);
        for (std::size_t i = 0; i < ntr; ++i) {
            const Tracer& t0 = (*tracers)[i];
            const Point x{t0.x.x1 + stage_c[st] * dt * tr_rate[i].x1, t0.x.x2 + stage_c[st] * dt * tr_rate[i].x2};
            const PointSample q = sample(sp, x);
            tr_rate[i] = {q.u1, q.u2, q.f1 / q.rho, q.f2 / q.rho};
            Tracer& acc = tr_acc[i];
            acc.x.x1 += weight[st] * dt * tr_rate[i].x1;
            acc.x.x2 += weight[st] * dt * tr_rate[i].x2;
            acc.int_f1 += weight[st] * dt * tr_rate[i].i1;
            acc.int_f2 += weight[st] * dt * tr_rate[i].i2;
        }
        rhs(rho_stage, u_stage, sp, rho_t, u_t);
        rho_acc.axpy(weight[st] * dt, rho_t);
        u_acc.u1.axpy(weight[st] * dt, u_t.u1);
        u_acc.u2.axpy(weight[st] * dt, u_t.u2);
    }

    const double t_new = s.t + dt;
    const double min_rho = rho_acc.min();
    if (!std::isfinite(min_rho) || min_rho < opts_.positivity_error) {
        std::ostringstream msg;
        msg << "density reached " << min_rho << " at t = " << t_new;
        throw PositivityError(msg.str(), t_new, min_rho);
    }
    if (min_rho < opts_.positivity_warn && warnings) {
        std::ostringstream msg;
        msg << "density dipped to " << min_rho << " at t = " << t_new;
        warnings->push_back(msg.str());
    }
    s.rho = std::move(rho_acc);
    s.u = std::move(u_acc);
    s.t = t_new;
    if (tracers) *tracers = std::move(tr_acc);
}

double reconstruct_A(const TracerSeries& series, double int_f1, double int_f2) {
    const double w = series.omega0 / series.rho0;
    const double e = series.eta0 / series.rho0 + int_f1;
    const double x = series.xi0 / series.rho0 + int_f2;
    return 0.5 * (w * w - e * e - x * x);
}

namespace {

double wrap(double x, double L) {
    const double span = 2.0 * L;
    double r = std::fmod(x + L, span);
    if (r < 0.0) r += span;
    return r - L;
}

}  // namespace

SimulationResult EulerPoissonSolver::run(PdeState s, const SimulationOptions& opts) const {
    if (!(opts.t_end > s.t)) throw DomainError("simulation horizon must lie after the start time");
    if (!(opts.dt_max > 0.0)) throw DomainError("dt_max must be positive");
    if (!(opts.norm_interval > 0.0)) throw DomainError("norm interval must be positive");
    for (const Point& p : opts.tracers)
        if (!grid_.contains(p)) throw DomainError("tracer start lies outside the periodic domain");

    project(s);
    SimulationResult out;
    std::vector<Tracer> tracers;
    for (const Point& p : opts.tracers) {
        const PointSample q = sample(s, p);
        if (!(q.rho > 0.0)) throw NonVacuumError("tracer starts in vacuum");
        TracerSeries series;
        series.x0 = p;
        series.rho0 = q.rho;
        series.omega0 = q.omega;
        series.eta0 = q.eta;
        series.xi0 = q.xi;
        out.tracers.push_back(series);
        tracers.push_back({p, 0.0, 0.0});
    }

    std::vector<double> snaps;
    for (double t : opts.snapshot_times)
        if (t >= s.t && t <= opts.t_end) snaps.push_back(t);
    std::sort(snaps.begin(), snaps.end());
    snaps.erase(std::unique(snaps.begin(), snaps.end()), snaps.end());

    const double t0 = s.t;
    const double L = grid_.half_width();
    auto record = [&](bool norms, bool snapshot) {
        const NormSample ns = ops_.diagnostics(s.rho, params_, s.t);
        if (norms) {
            out.norms.push_back(ns);
            if (!tracers.empty()) {
                const StageSpectra sp = spectra(s.rho, s.u);
                for (std::size_t i = 0; i < tracers.size(); ++i) {
                    TracerSample ts;
                    ts.t = s.t;
                    ts.x = {wrap(tracers[i].x.x1, L), wrap(tracers[i].x.x2, L)};
                    ts.q = sample(sp, tracers[i].x);
                    ts.A = reconstruct_A(out.tracers[i], tracers[i].int_f1, tracers[i].int_f2);
                    out.tracers[i].samples.push_back(ts);
                }
            }
        }
        if (snapshot) out.snapshots.push_back({s.t, s.rho, ns});
    };

    std::size_t next_norm = 1;
    std::size_t next_snap = 0;
    // Intervals like 0.1 are stepped as n / 10 so that sample times print cleanly.
    const double per_unit = std::round(1.0 / opts.norm_interval);
    const bool unit_fraction = std::abs(per_unit * opts.norm_interval - 1.0) < 1e-12;
    auto norm_time = [&](std::size_t n) {
        const double offset = unit_fraction ? static_cast<double>(n) / per_unit : n * opts.norm_interval;
        return std::min(opts.t_end, t0 + offset);
    };
    const double eps = 1e-12 * std::max(1.0, opts.t_end);
    record(true, !snaps.empty() && std::abs(snaps.front() - s.t) <= eps);
    if (!snaps.empty() && std::abs(snaps.front() - s.t) <= eps) next_snap = 1;

    std::vector<std::string> dips;
    try {
        while (s.t < opts.t_end - eps) {
            double target = norm_time(next_norm);
            if (next_snap < snaps.size()) target = std::min(target, snaps[next_snap]);
            const double remaining = target - s.t;
            const double limit = std::min(opts.dt_max, max_stable_dt(s.u));
            const double nsteps = std::ceil(remaining / limit * (1.0 - 1e-12));
            const double dt = remaining / std::max(1.0, nsteps);
            step(s, dt, &tracers, &dips);
            ++out.steps;
            if (std::abs(s.t - target) <= eps) {
                s.t = target;
                const bool at_norm = std::abs(norm_time(next_norm) - target) <= eps;
                const bool at_snap = next_snap < snaps.size() && std::abs(snaps[next_snap] - target) <= eps;
                if (at_norm) ++next_norm;
                if (at_snap) ++next_snap;
                record(at_norm, at_snap);
            }
        }
    } catch (const PositivityError& e) {
        out.status = RunStatus::PositivityFailure;
        out.message = e.what();
    } catch (const StepSizeError& e) {
        out.status = RunStatus::StepSizeFailure;
        out.message = e.what();
    }
    if (!dips.empty()) {
        out.warnings.push_back(dips.front());
        if (dips.size() > 1)
            out.warnings.push_back(std::to_string(dips.size()) + " steps ended with density below " +
                                   format_double(opts.solver.positivity_warn) + "; last: " + dips.back());
    }
    out.t_final = s.t;
    return out;
}

std::pair<ScalarField, VectorField> step_ep(const ScalarField& rho, const VectorField& u, const PhysicalParams& params,
                                            const Grid& grid, double dt) {
    EulerPoissonSolver solver(grid, params);
    PdeState s(rho, u);
    solver.step(s, dt);
    return {std::move(s.rho), std::move(s.u)};
}

}  // namespace epct::spectral
