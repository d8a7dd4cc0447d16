#pragma once

// End-to-end computations producing result tables: a single solve, the
// fourteen-configuration taxonomy, and the atomic eigenstructure scan.

#include <optional>
#include <string>
#include <vector>

#include "omcool/darkmode.hpp"
#include "omcool/lyapunov.hpp"
#include "omcool/model.hpp"
#include "omcool/table.hpp"

namespace omcool {

inline constexpr const char* tool_version = "0.3.0";

/// Evenly spaced (or log-spaced) grid with exact endpoints.
struct GridSpec {
    double min = 0.0;
    double max = 1.0;
    std::size_t points = 2;
    bool log = false;

    /// Throws DomainError unless points >= 2 and min < max (or points == 1
    /// and min == max), with min > 0 on a log grid.
    void check() const;
    std::vector<double> values() const;
};

/// "MIN:MAX:POINTS[:log]". Throws ParseError.
GridSpec parse_grid(std::string_view text);

struct PointResult {
    StabilityReport stability;
    /// Final phonon numbers, one per mechanical mode; empty when unstable.
    std::vector<double> phonons;
    /// Present for effective-mode n_type and network4 configurations.
    std::optional<DarkModeReport> dark;
};

struct SolveOptions {
    LyapunovMethod method = LyapunovMethod::schur;
};

/// Steady amplitudes (physical mode), drift and noise, stability, Lyapunov
/// solve, phonon numbers, and the dark-mode report. An unstable system is
/// reported, not thrown; solver failures throw.
PointResult solve_point(const ValidatedConfig& config, const SolveOptions& options = {});

/// Output columns of solve/sweep tables for a configuration:
/// n_f_1.., stable, then dark, zeta_residual, gs_minus_residual where defined.
std::vector<std::string> output_columns(const ValidatedConfig& config);

/// Cells matching output_columns. Unstable points get NaN phonon numbers
/// and stable = 0.
std::vector<Cell> output_cells(const ValidatedConfig& config, const PointResult& result);

/// Final phonon number of one cavity coupled to one resonator, the
/// comparison baseline for multi-mode cooling.
double single_resonator_reference(double detuning, double decay, double frequency, double damping,
                                  double thermal_occupation, double coupling);

/// Single-row table.
ResultTable run_solve(const ValidatedConfig& config, const SolveOptions& options = {});

/// One row per closed-channel subset (and per kappa value when a grid is
/// given): config, [kappa], dark, zeta_residual, gs_minus_residual, stable,
/// n_f_1, n_f_2. kappa is the decay of the intermediate cavity.
ResultTable run_taxonomy(const ValidatedConfig& base, const std::optional<GridSpec>& kappa = std::nullopt,
                         const SolveOptions& options = {});

/// ratio, lambda_1.., p_e_1.. per grid value (xi for 3 levels, xi' for 4),
/// with Omega2 (Omega') = 1.
ResultTable run_atomic(int levels, const GridSpec& ratio);

}  // namespace omcool
