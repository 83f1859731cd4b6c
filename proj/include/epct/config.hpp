#pragma once

// JSON run configuration shared by every CLI command. Validation is done in
// full before anything runs; every problem is reported with its JSON path.
// docs/config.schema.json describes the same document.

#include "epct/integrator.hpp"
#include "epct/riccati.hpp"
#include "epct/spectral/examples.hpp"
#include "epct/spectral/solver.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace epct {

struct AxisRange {
    double min = 0.0;
    double max = 0.0;
    int count = 2;

    double at(int i) const { return count == 1 ? min : min + (max - min) * i / (count - 1); }
};

struct SweepSpec {
    AxisRange rho{0.01, 1.2, 60};
    AxisRange d{-1.0, 2.0, 60};
};

struct PdeConfig {
    std::optional<spectral::ExampleId> example;
    /// Uniform density at rest; an alternative to `example`.
    std::optional<double> uniform_density;
    int n = 128;
    double half_width = 10.0;
    spectral::SimulationOptions sim{};
};

struct RunConfig {
    /// Set only when the document has a "physics" section.
    std::optional<PhysicalParams> physics;
    CoefficientModel coefficient = CoefficientModel::exponential_envelope();
    IntegratorOptions integrator{.t_end = 20.0};
    std::optional<State2> initial;
    SweepSpec sweep{};
    PdeConfig pde{};
};

/// Parses and validates a configuration document. Throws ConfigError listing
/// every issue as "$.path: message".
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace epct
