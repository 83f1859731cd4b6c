#pragma once

// The three periodic test problems: a Gaussian under attraction (5.1), four
// sech bumps under attraction (5.2) and the same bumps under repulsion with
// no background (5.3). All start from rest.

#include "epct/riccati.hpp"
#include "epct/spectral/solver.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace epct::spectral {

enum class ExampleId { Gaussian51, Bumps52, Repulsive53 };

/// Accepts "5.1", "5.2", "5.3".
std::optional<ExampleId> parse_example(std::string_view name);
std::string to_string(ExampleId id);

PhysicalParams example_params(ExampleId id);

/// Initial density. The sech data are periodized by summing lattice images.
ScalarField example_density(ExampleId id, const Grid& grid);

PdeState example_initial(ExampleId id, const Grid& grid);

SimulationResult run_example(ExampleId id, const Grid& grid, const SimulationOptions& opts);

/// Runs the PDE from `initial` with a single tracer released at x0.
TracerSeries trace_characteristic(const PdeState& initial, const PhysicalParams& params, const Grid& grid,
                                  const Point& x0, SimulationOptions opts, RunStatus* status = nullptr);

}  // namespace epct::spectral
