#pragma once

// Grid sweeps over one or two configuration parameters.
//
// Parameter paths:
//   cavities.<id|index>.{detuning,decay,drive}
//   mechanicals.<id|index>.{frequency,damping,thermal_occupation}
//   edges.<index|from-to|kind>.strength
// A kind selector (optomechanical, photon_hop, phonon_hop) sets every edge
// of that kind, e.g. a uniform hopping along a chain.

#include <cstddef>
#include <exception>
#include <string>
#include <string_view>
#include <vector>

#include "omcool/model.hpp"
#include "omcool/pipeline.hpp"
#include "omcool/table.hpp"

namespace omcool {

struct SweepAxis {
    std::string path;
    GridSpec grid;
};

/// "PATH:MIN:MAX:POINTS[:log]". Throws ParseError.
SweepAxis parse_axis(std::string_view text);

struct SweepOutputs {
    bool phonons = true;
    bool stability = true;
    bool dark = true;
};

struct SweepSpec {
    SystemConfig base;
    std::vector<SweepAxis> axes;
    SweepOutputs outputs;
};

/// Set the scalar at path. Throws DomainError if the path does not resolve.
void set_parameter(SystemConfig& config, std::string_view path, double value);

/// One or two axes, valid grids, resolvable paths, valid base. Throws
/// DomainError, ConfigError.
void check_sweep(const SweepSpec& spec);

struct SweepResult {
    /// Rows in row-major grid order (first axis outermost). On failure,
    /// only the rows before the first failed grid point.
    ResultTable table;
    std::size_t total_points = 0;
    /// First hard failure (validation, convergence, or solver error) in grid
    /// order, if any. Unstable points are rows, not failures.
    std::exception_ptr failure;
    std::size_t failed_index = 0;
};

/// OpenMP-parallel sweep over `jobs` threads. Output is byte-identical to
/// run_sweep_serial for any jobs >= 1.
SweepResult run_sweep(const SweepSpec& spec, int jobs, const SolveOptions& options = {});

/// Single-threaded reference implementation.
SweepResult run_sweep_serial(const SweepSpec& spec, const SolveOptions& options = {});

/// OMCOOL_JOBS when set to a positive integer, else the OpenMP default.
int default_jobs();

}  // namespace omcool
