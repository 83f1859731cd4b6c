#include "epct/spectral/examples.hpp"

#include "epct/errors.hpp"

#include <array>
#include <cmath>

namespace epct::spectral {

namespace {

struct Bump {
    double amplitude;
    Point center;
};

constexpr std::array<Bump, 4> kBumps{{
    {0.01, {-2.5, -2.5}},
    {0.02, {2.5, 2.5}},
    {0.01, {-2.5, 2.5}},
    {0.01, {2.5, -2.5}},
}};

// Lattice images beyond this many periods contribute below e^-20.
constexpr int kImages = 2;

double sech(double x) { return 1.0 / std::cosh(x); }

}  // namespace

std::optional<ExampleId> parse_example(std::string_view name) {
    if (name == "5.1") return ExampleId::Gaussian51;
    if (name == "5.2") return ExampleId::Bumps52;
    if (name == "5.3") return ExampleId::Repulsive53;
    return std::nullopt;
}

std::string to_string(ExampleId id) {
    switch (id) {
        case ExampleId::Gaussian51: return "5.1";
        case ExampleId::Bumps52: return "5.2";
        case ExampleId::Repulsive53: return "5.3";
    }
    return "?";
}

PhysicalParams example_params(ExampleId id) {
    switch (id) {
        case ExampleId::Gaussian51: return PhysicalParams(-1.0, 0.03);
        case ExampleId::Bumps52: return PhysicalParams(-1.0, 0.04);
        case ExampleId::Repulsive53: return PhysicalParams(1.0, 0.0);
    }
    throw DomainError("unknown example");
}

ScalarField example_density(ExampleId id, const Grid& grid) {
    if (id == ExampleId::Gaussian51) {
        return ScalarField::from_function(grid, [](double x, double y) { return 0.015 * std::exp(-(x * x + y * y)); });
    }
    const double period = 2.0 * grid.half_width();
    return ScalarField::from_function(grid, [period](double x, double y) {
        double sum = 0.0;
        for (const Bump& b : kBumps)
            for (int p = -kImages; p <= kImages; ++p)
                for (int q = -kImages; q <= kImages; ++q)
                    sum += b.amplitude *
                           sech(0.5 * std::hypot(x - b.center.x1 - p * period, y - b.center.x2 - q * period));
        return sum;
    });
}

PdeState example_initial(ExampleId id, const Grid& grid) {
    return PdeState(example_density(id, grid), VectorField(grid), 0.0);
}

SimulationResult run_example(ExampleId id, const Grid& grid, const SimulationOptions& opts) {
    const EulerPoissonSolver solver(grid, example_params(id), opts.solver);
    return solver.run(example_initial(id, grid), opts);
}

TracerSeries trace_characteristic(const PdeState& initial, const PhysicalParams& params, const Grid& grid,
                                  const Point& x0, SimulationOptions opts, RunStatus* status) {
    opts.tracers = {x0};
    opts.snapshot_times.clear();
    const EulerPoissonSolver solver(grid, params, opts.solver);
    SimulationResult res = solver.run(initial, opts);
    if (status) *status = res.status;
    return std::move(res.tracers.front());
}

}  // namespace epct::spectral
