#pragma once

// Pseudo-spectral method of lines for the periodic Euler-Poisson system
//   rho_t = -div(rho u),  u_t = -(u . grad) u + k grad Delta^{-1}(rho - c_b),
// advanced with classical RK4. Quadratic products are formed from fields in
// the 2/3-dealiased subspace and their spectra are truncated again, so the
// state never leaves that subspace.
//
// Tracers ride inside the same RK4 step as extra ODE state: position, and
// the two quadratures int f_i / rho that reconstruct A(t).

#include "epct/riccati.hpp"
#include "epct/spectral/grid.hpp"
#include "epct/spectral/operators.hpp"

#include <optional>
#include <string>
#include <vector>

namespace epct::spectral {

struct PdeState {
    ScalarField rho;
    VectorField u;
    double t = 0.0;

    PdeState(ScalarField r, VectorField v, double time = 0.0) : rho(std::move(r)), u(std::move(v)), t(time) {}
};

/// Pointwise flow quantities sampled at one location.
struct PointSample {
    double rho = 0.0;
    double d = 0.0;      ///< du1/dx1 + du2/dx2
    double omega = 0.0;  ///< du2/dx1 - du1/dx2
    double eta = 0.0;    ///< du1/dx1 - du2/dx2
    double xi = 0.0;     ///< du2/dx1 + du1/dx2
    double f1 = 0.0;
    double f2 = 0.0;
    double u1 = 0.0;
    double u2 = 0.0;
};

/// Lagrangian tracer state carried through the RK4 stages.
struct Tracer {
    Point x;
    double int_f1 = 0.0;  ///< int_0^t f1 / rho
    double int_f2 = 0.0;  ///< int_0^t f2 / rho
};

struct TracerSample {
    double t = 0.0;
    Point x;
    PointSample q;
    double A = 0.0;
};

struct TracerSeries {
    Point x0;
    double rho0 = 0.0, omega0 = 0.0, eta0 = 0.0, xi0 = 0.0;
    std::vector<TracerSample> samples;
};

enum class RunStatus { Completed, PositivityFailure, StepSizeFailure };

std::string to_string(RunStatus s);

struct SolverOptions {
    double cfl = 0.5;
    double positivity_warn = -1e-8;
    double positivity_error = -1e-4;
};

struct SimulationOptions {
    double t_end = 10.0;
    double dt_max = 0.01;
    double norm_interval = 0.1;
    std::vector<double> snapshot_times;
    std::vector<Point> tracers;
    SolverOptions solver{};
};

struct Snapshot {
    double t = 0.0;
    ScalarField rho;
    NormSample norms;
};

struct SimulationResult {
    std::vector<NormSample> norms;
    std::vector<Snapshot> snapshots;
    std::vector<TracerSeries> tracers;
    RunStatus status = RunStatus::Completed;
    /// Time reached and failure message when status != Completed.
    double t_final = 0.0;
    std::string message;
    std::vector<std::string> warnings;
    std::size_t steps = 0;
};

class EulerPoissonSolver {
public:
    EulerPoissonSolver(const Grid& grid, const PhysicalParams& params, SolverOptions opts = {});

    const SpectralOperators& ops() const noexcept { return ops_; }
    const PhysicalParams& params() const noexcept { return params_; }

    /// Zeroes every mode outside the 2/3 band.
    void project(PdeState& s) const;

    /// Largest dt allowed by the advective bound (infinite for u = 0).
    double max_stable_dt(const VectorField& u) const;

    /// One RK4 step of size dt; tracers advance in lockstep. Throws
    /// StepSizeError if dt breaks the CFL bound and PositivityError if
    /// min rho drops below the hard limit. Soft positivity warnings are
    /// appended to `warnings` when given.
    void step(PdeState& s, double dt, std::vector<Tracer>* tracers = nullptr,
              std::vector<std::string>* warnings = nullptr) const;

    PointSample sample(const PdeState& s, const Point& x) const;

    SimulationResult run(PdeState s, const SimulationOptions& opts) const;

private:
    struct StageSpectra;

    StageSpectra spectra(const ScalarField& rho, const VectorField& u) const;
    void rhs(const ScalarField& rho, const VectorField& u, const StageSpectra& sp, ScalarField& rho_t,
             VectorField& u_t) const;
    PointSample sample(const StageSpectra& sp, const Point& x) const;

    Grid grid_;
    PhysicalParams params_;
    SolverOptions opts_;
    SpectralOperators ops_;
};

/// Single step without tracers: returns the advanced (rho, u).
std::pair<ScalarField, VectorField> step_ep(const ScalarField& rho, const VectorField& u, const PhysicalParams& params,
                                            const Grid& grid, double dt);

/// A(t) from the tracer quadratures and the initial data at the tracer.
double reconstruct_A(const TracerSeries& series, double int_f1, double int_f2);

}  // namespace epct::spectral
