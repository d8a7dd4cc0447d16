#pragma once

// Named parameter sets reproducing the published figure grids.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "omcool/model.hpp"
#include "omcool/pipeline.hpp"
#include "omcool/sweep.hpp"

namespace omcool {

enum class PresetKind { solve, sweep, taxonomy, atomic };

struct PresetCase {
    std::string label;
    SystemConfig config;
    /// Sweep axes (sweep kind) or the single kappa axis (taxonomy kind).
    std::vector<SweepAxis> axes;
};

struct Preset {
    std::string name;
    std::string description;
    PresetKind kind = PresetKind::solve;
    std::vector<PresetCase> cases;
    /// Default column for SVG rendering.
    std::string plot_column;
    /// Taxonomy kind: keep only configurations with this many closed channels.
    std::size_t closed_channels = 0;
    /// Atomic kind.
    int levels = 3;
    GridSpec ratio;
};

const std::vector<std::string>& preset_names();

/// Throws DomainError for an unknown name or points < 2.
Preset make_preset(std::string_view name, std::size_t points = 100);

/// Case by label; empty label selects the first. Throws DomainError.
const PresetCase& preset_case(const Preset& preset, std::string_view label = {});

/// Run every case and stack the tables (with a leading "case" column when
/// there is more than one case). Partial output and the first failure are
/// reported as in run_sweep.
SweepResult run_preset(const Preset& preset, int jobs, const SolveOptions& options = {});

}  // namespace omcool
