// Acceptance run: one [PASS]/[FAIL] line per criterion, exit status 1 if any
// criterion fails.

#include "epct/comparison.hpp"
#include "epct/integrator.hpp"
#include "epct/spectral/examples.hpp"
#include "epct/spectral/operators.hpp"
#include "epct/spectral/solver.hpp"
#include "epct/thresholds.hpp"

#include "support/oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace epct;
namespace sp = epct::spectral;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;
};

class Clock {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

// Each sample may exceed the smallest earlier sample by at most 1%.
bool non_increasing(const std::vector<double>& v, double slack, double* worst) {
    double lowest = v.front(), w = 0.0;
    for (std::size_t i = 1; i < v.size(); ++i) {
        w = std::max(w, v[i] / lowest - 1.0);
        lowest = std::min(lowest, v[i]);
    }
    if (worst) *worst = w;
    return w <= slack;
}

// ---- criteria 1 and 2 share the phase-plane sweep ----

struct SweepPoint {
    double rho0, d0;
    Region region;
    TerminalStatus status;
    State2 end;
    bool error = false;
};

std::vector<SweepPoint> sweep_points;
double sweep_seconds = 0.0;

void run_sweep() {
    Clock clock;
    const auto A = CoefficientModel::exponential_envelope();
    IntegratorOptions o;
    o.t_end = 20.0;
    for (int i = 0; i < 60; ++i) {
        for (int j = 0; j < 60; ++j) {
            SweepPoint p{0.01 + (1.2 - 0.01) * i / 59.0, -1.0 + 3.0 * j / 59.0, Region::Outside, {}, {}, false};
            p.region = classify(p.rho0, p.d0);
            try {
                const auto res = integrate_ep({p.rho0, p.d0}, A, {}, o);
                p.status = res.trajectory.status;
                p.end = {res.trajectory.back()[0], res.trajectory.back()[1]};
            } catch (const Error&) {
                p.error = true;
            }
            sweep_points.push_back(p);
        }
    }
    sweep_seconds = clock.seconds();
}

Verdict criterion1() {
    int inside = 0, exceptions = 0;
    for (const auto& p : sweep_points) {
        if (p.region == Region::Outside) continue;
        ++inside;
        if (p.error || p.status.kind != TerminalKind::ReachedHorizon) ++exceptions;
    }
    Verdict v;
    v.pass = exceptions == 0 && inside > 0 && sweep_seconds <= 120.0;
    v.detail = std::to_string(inside) + " classified points, " + std::to_string(exceptions) + " exceptions, " +
               fmt(sweep_seconds) + " s";
    return v;
}

Verdict criterion2() {
    Verdict v;
    IntegratorOptions o;
    o.t_end = 20.0;
    const auto res = integrate_ep({0.5, 0.1}, CoefficientModel::exponential_envelope(), {}, o);
    const auto& st = res.trajectory.status;
    const auto& last = res.trajectory.back();
    const bool blow = st.kind == TerminalKind::BlowUp && st.t_blow_lower < st.t_blow_upper &&
                      std::isfinite(st.t_blow_upper) && last[1] < -1e3 && last[0] > 1e3;
    int gray = 0, off = 0;
    double worst_d = 0.0, worst_rho = 0.0;
    for (const auto& p : sweep_points) {
        if (!in_open_region(p.rho0, p.d0)) continue;
        ++gray;
        const double dd = std::abs(p.end.d - std::sqrt(2.0));
        worst_d = std::max(worst_d, dd);
        worst_rho = std::max(worst_rho, p.end.rho);
        if (p.error || !(dd < 0.05) || !(p.end.rho < 1e-4)) ++off;
    }
    v.pass = blow && gray > 0 && off == 0;
    v.detail = "blow-up in [" + fmt(st.t_blow_lower) + ", " + fmt(st.t_blow_upper) + "], d_last " + fmt(last[1]) +
               ", rho_last " + fmt(last[0]) + "; " + std::to_string(gray) + " interior points, max |d(20)-sqrt2| " +
               fmt(worst_d) + ", max rho(20) " + fmt(worst_rho);
    return v;
}

// ---- criterion 3 ----

Verdict criterion3() {
    std::mt19937_64 rng(303);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    int left = 0;
    double worst = -1.0;
    IntegratorOptions o;
    o.t_end = 10.0;
    for (int k = 0; k < 100; ++k) {
        const double a0 = 0.02 + 0.47 * U(rng);
        const double b0 = 0.51 + 2.0 * U(rng);
        const double B0 = 1.0 + (s1_surface_B(a0) - 1.0) * (0.02 + 0.96 * U(rng));
        const auto res = integrate_aux({a0, b0, B0}, o);
        bool ok = res.trajectory.status.kind == TerminalKind::ReachedHorizon;
        for (const auto& y : res.trajectory.y) {
            // S1 written as 2 a^2 B - (1 - a) <= 0 so the slack is scale free.
            const double excess = std::max({y[0] - 0.5, 0.5 - y[1], 2.0 * y[0] * y[0] * y[2] - (1.0 - y[0]), -y[0]});
            worst = std::max(worst, excess);
            if (excess > 1e-8) ok = false;
        }
        if (!ok) ++left;
    }
    int bad = 0;
    for (int i = 0; i < 10000; ++i) {
        const double a = 0.5 * (1.0 - U(rng));
        const double b = 0.5 + 2.5 * U(rng);
        if (!(s1_flux({a, b, s1_surface_B(a)}).value > 0.0)) ++bad;
        const double B = 1.0 + (s1_surface_B(a) - 1.0) * U(rng);
        if (!(s2_flux({a, 0.5, B}).value >= 0.375 - 0.5 * a)) ++bad;
    }
    return {left == 0 && bad == 0, std::to_string(left) + " of 100 starts left, max excess " + fmt(worst) + "; " +
                                       std::to_string(bad) + " flux violations on 10^4 surface points"};
}

// ---- criterion 4 ----

CoefficientModel random_table(std::mt19937_64& rng, double gamma, double horizon) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::vector<double> t, v;
    for (int i = 0; i <= static_cast<int>(std::round(horizon / 0.1)); ++i) {
        const double ti = 0.1 * i;
        const double lo = -0.5 * std::exp(ti);
        t.push_back(ti);
        v.push_back(lo + (gamma - lo) * U(rng));
    }
    return CoefficientModel::tabulated(t, v);
}

Verdict criterion4() {
    std::mt19937_64 rng(404);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    int runs = 0, order_bad = 0, bound_bad = 0;
    while (runs < 200) {
        const double a0 = 0.02 + 0.46 * U(rng);
        const double b0 = -0.5 + 2.5 * U(rng);
        if (!in_open_region(a0, b0)) continue;
        ++runs;
        const double rho0 = a0 * (0.05 + 0.94 * U(rng));
        const double d0 = b0 + 0.001 + U(rng);
        const double gamma = U(rng);
        CoupledOptions opts;
        opts.gamma = gamma;
        const auto run = run_coupled({rho0, d0}, {a0, b0, 1.0}, random_table(rng, gamma, 10.0), 10.0, opts);
        if (!run.ordering_ok || run.status.kind != TerminalKind::ReachedHorizon) ++order_bad;
        const double b_hi = std::max(std::abs(b0), std::sqrt(2.0));
        const double d_hi = d_upper_bound(0.5, gamma, d0);
        bool ok = true;
        for (std::size_t i = 0; i < run.t.size(); ++i) {
            const auto& x = run.aux[i];
            ok = ok && x.a <= 0.5 + 1e-6 && x.b >= -0.5 - 1e-6 && x.b <= b_hi + 1e-6 && run.ep[i].d <= d_hi + 1e-6;
        }
        if (!ok) ++bound_bad;
    }
    return {order_bad == 0 && bound_bad == 0, std::to_string(order_bad) + " ordering failures, " +
                                                  std::to_string(bound_bad) + " bound failures over 200 pairs"};
}

// ---- criterion 5 ----

Verdict criterion5() {
    int disagreements = 0;
    for (std::uint32_t i = 1; i <= 10000; ++i) {
        const double rho = 1.2 * oracle::halton(i, 2);
        const double d = -1.0 + 3.0 * oracle::halton(i, 3);
        const bool lib = classify(rho, d) != Region::Outside;
        const bool ref = (rho > 0.0 && rho < 0.5 && d >= 0.5) || oracle::middle_region(rho, d) ||
                         oracle::lower_region(rho, d);
        if (lib != ref) ++disagreements;
    }
    const double e1 = std::abs(t_star(0.1) / std::log(45.0) - 1.0);
    const double e2 = std::abs(t_star_star(0.1, -0.1) / std::log(10.0) - 1.0);
    return {disagreements == 0 && e1 <= 1e-12 && e2 <= 1e-12,
            std::to_string(disagreements) + " disagreements on 10^4 points; t* rel err " + fmt(e1) + ", t** rel err " +
                fmt(e2)};
}

// ---- criterion 6 ----

sp::ScalarField band_limited(const sp::Grid& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> N(0.0, 1.0);
    const double s = std::numbers::pi / g.half_width();
    std::vector<std::array<double, 4>> terms;
    for (int p = 0; p <= 6; ++p)
        for (int q = -6; q <= 6; ++q)
            if (p != 0 || q > 0) terms.push_back({double(p), double(q), N(rng), N(rng)});
    return sp::ScalarField::from_function(g, [&](double x, double y) {
        double v = 0.0;
        for (const auto& t : terms) {
            const double ph = s * (t[0] * (x + g.half_width()) + t[1] * (y + g.half_width()));
            v += t[2] * std::cos(ph) + t[3] * std::sin(ph);
        }
        return v;
    });
}

double max_diff(const sp::ScalarField& a, const sp::ScalarField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

Verdict criterion6() {
    const sp::Grid g(128, 10.0);
    const sp::SpectralOperators ops(g);
    const auto h = band_limited(g, 61);
    auto sum = ops.riesz_apply(1, 1, h);
    sum.axpy(1.0, ops.riesz_apply(2, 2, h));
    const double riesz = max_diff(sum, h);

    auto f = band_limited(g, 62);
    const double mean = f.mean();
    auto centred = f;
    for (double& x : centred.data()) x -= mean;
    const double poisson = max_diff(ops.laplacian(ops.poisson_inverse(f)), centred);

    const sp::EulerPoissonSolver solver(g, sp::example_params(sp::ExampleId::Gaussian51));
    sp::PdeState s = sp::example_initial(sp::ExampleId::Gaussian51, g);
    solver.project(s);
    const double m0 = s.rho.mean();
    for (int i = 0; i < 1000; ++i) solver.step(s, 0.01);
    const double mass = std::abs(s.rho.mean() / m0 - 1.0);

    // Fixed horizon, step counts doubling; the finest ratio estimates the order.
    const sp::Grid gc(64, 10.0);
    const sp::EulerPoissonSolver coarse(gc, sp::example_params(sp::ExampleId::Gaussian51));
    sp::PdeState base = sp::example_initial(sp::ExampleId::Gaussian51, gc);
    coarse.project(base);
    for (int i = 0; i < 20; ++i) coarse.step(base, 0.1);
    std::vector<sp::ScalarField> sol;
    for (int n : {16, 32, 64}) {
        sp::PdeState x = base;
        for (int i = 0; i < n; ++i) coarse.step(x, 2.0 / n);
        sol.push_back(x.rho);
    }
    const double order = std::log2(max_diff(sol[0], sol[1]) / max_diff(sol[1], sol[2]));

    return {riesz < 1e-12 && poisson < 1e-10 && mass < 1e-12 && order > 3.7 && order < 4.3,
            "R11+R22-id " + fmt(riesz) + ", Poisson round trip " + fmt(poisson) + ", mass drift " + fmt(mass) +
                " per 1000 steps, observed order " + fmt(order)};
}

// ---- criteria 7 and 8 share the example runs ----

struct ExampleRun {
    sp::SimulationResult result;
    double seconds = 0.0;
};

ExampleRun run(sp::ExampleId id, std::vector<sp::Point> tracers) {
    Clock clock;
    sp::SimulationOptions o;
    o.t_end = 10.0;
    o.dt_max = 0.01;
    o.norm_interval = 0.1;
    o.tracers = std::move(tracers);
    ExampleRun r{sp::run_example(id, sp::Grid(128, 10.0), o), 0.0};
    r.seconds = clock.seconds();
    return r;
}

std::vector<double> column(const std::vector<sp::NormSample>& v, double sp::NormSample::*m) {
    std::vector<double> out;
    for (const auto& s : v) out.push_back(s.*m);
    return out;
}

ExampleRun ex51, ex52, ex53;

Verdict criterion7() {
    Verdict v;
    std::ostringstream d;
    const auto& n1 = ex51.result.norms;
    double w_rho = 0.0;
    const bool rho_ok = non_increasing(column(n1, &sp::NormSample::rho_sup), 0.01, &w_rho);
    const auto field = column(n1, &sp::NormSample::dphi_dx_sup);
    const double variation = (*std::max_element(field.begin(), field.end()) -
                              *std::min_element(field.begin(), field.end())) / field.front();
    const double ref = oracle::gaussian_peak_field(0.015);
    const double oracle_err = std::abs(field.front() / ref - 1.0);

    const auto& n3 = ex53.result.norms;
    double w3[3];
    const bool ok3 = non_increasing(column(n3, &sp::NormSample::rho_sup), 0.01, &w3[0]) &
                     non_increasing(column(n3, &sp::NormSample::phi_sup), 0.01, &w3[1]) &
                     non_increasing(column(n3, &sp::NormSample::dphi_dx_sup), 0.01, &w3[2]);

    const bool ran = ex51.result.status == sp::RunStatus::Completed && ex53.result.status == sp::RunStatus::Completed;
    v.pass = ran && rho_ok && variation < 0.10 && ok3 && oracle_err < 0.02 && ex51.seconds <= 300.0 &&
             ex53.seconds <= 300.0;
    d << "5.1: |rho|inf " << fmt(n1.front().rho_sup) << " -> " << fmt(n1.back().rho_sup) << " (worst rise "
      << fmt(100 * w_rho) << "%), field variation " << fmt(100 * variation) << "%, oracle error "
      << fmt(100 * oracle_err) << "%, " << fmt(ex51.seconds) << " s; 5.3: worst rises " << fmt(100 * w3[0]) << "%, "
      << fmt(100 * w3[1]) << "%, " << fmt(100 * w3[2]) << "%, " << fmt(ex53.seconds) << " s";
    v.detail = d.str();
    return v;
}

Verdict criterion8() {
    double vort = 0.0;
    bool envelope = true;
    auto check_envelope = [&](const sp::TracerSeries& s) {
        for (const auto& x : s.samples) envelope = envelope && x.A >= -std::exp(x.t);
    };
    for (const auto& s : ex52.result.tracers) {
        const double w0 = s.omega0 / s.rho0;
        for (const auto& x : s.samples) vort = std::max(vort, std::abs(x.q.omega / x.q.rho - w0));
        check_envelope(s);
    }
    double center = 0.0;
    for (const auto& s : ex51.result.tracers) {
        for (const auto& x : s.samples)
            center = std::max({center, std::abs(x.q.omega), std::abs(x.q.f1), std::abs(x.q.f2)});
        check_envelope(s);
    }
    const bool ran = ex52.result.status == sp::RunStatus::Completed && !ex52.result.tracers.empty() &&
                     !ex51.result.tracers.empty();
    return {ran && vort < 1e-3 && center <= 1e-9 && envelope,
            "5.2 max |w/rho - w0/rho0| " + fmt(vort) + " over " + std::to_string(ex52.result.tracers.size()) +
                " tracers; 5.1 centre max |w|,|f1|,|f2| " + fmt(center) + "; A >= -e^t " +
                (envelope ? "holds" : "violated")};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Verdict()> check;
    };
    const std::vector<Criterion> criteria{
        {1, "region soundness on the 60x60 sweep", criterion1},
        {2, "blow-up bracket and convergence to (0, sqrt2)", criterion2},
        {3, "invariant space and surface fluxes", criterion3},
        {4, "comparison ordering and auxiliary bounds", criterion4},
        {5, "region formulas against the re-derivation", criterion5},
        {6, "spectral operator identities", criterion6},
        {7, "norm behaviour of examples 5.1 and 5.3", criterion7},
        {8, "tracer vorticity, centre forcing and A envelope", criterion8},
    };

    run_sweep();
    ex51 = run(sp::ExampleId::Gaussian51, {{0.0, 0.0}});
    ex52 = run(sp::ExampleId::Bumps52, {{1.0, -3.0}, {-2.5, 2.5}, {4.0, 1.0}, {-1.0, -1.0}});
    ex53 = run(sp::ExampleId::Repulsive53, {});

    int failed = 0;
    for (const auto& c : criteria) {
        Verdict v;
        try {
            v = c.check();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        if (!v.pass) ++failed;
        std::cout << (v.pass ? "[PASS] " : "[FAIL] ") << c.id << ' ' << c.name << " (" << v.detail << ")\n";
    }
    std::cout << (criteria.size() - failed) << '/' << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
