#pragma once

// On-disk formats for PDE output.
//
// Field files: 16-byte header ("EPF1", N as uint32 LE, L as float64 LE)
// followed by N*N float64 LE samples in storage order. Each field file has
// a JSON sidecar with the time, parameters and norms.

#include "epct/riccati.hpp"
#include "epct/spectral/solver.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace epct::spectral {

void write_field(const std::filesystem::path& path, const ScalarField& f);
/// Throws Error on a bad magic, truncated payload or invalid grid.
ScalarField read_field(const std::filesystem::path& path);

void write_manifest(const std::filesystem::path& path, const Snapshot& snap, const PhysicalParams& params,
                    const std::string& label);

void write_norm_csv(std::ostream& os, const std::vector<NormSample>& norms);
void write_tracer_csv(std::ostream& os, const TracerSeries& series);

}  // namespace epct::spectral
