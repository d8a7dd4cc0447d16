#pragma once

// Linearized optomechanical network: configuration types, validation, and
// assembly of the drift matrix A and noise matrix Q of du/dt = A u + N.
//
// All rates are dimensionless multiples of the first mechanical frequency.
// Canonical mode ordering is cavities first, then mechanicals, then the same
// sequence daggered, so a system with C cavities and M modes in total has
// u = (a_1..a_C, b_1..b_{M-C}, a_1^†.., b_1^†..).

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace omcool {

using Complex = std::complex<double>;

enum class ParameterMode { effective, physical };
enum class Topology { n_type, network4, chain, generic };
enum class EdgeKind { optomechanical, photon_hop, phonon_hop };

std::string_view to_string(ParameterMode mode);
std::string_view to_string(Topology topology);
std::string_view to_string(EdgeKind kind);
std::optional<ParameterMode> parse_parameter_mode(std::string_view text);
std::optional<Topology> parse_topology(std::string_view text);
std::optional<EdgeKind> parse_edge_kind(std::string_view text);

struct CavityMode {
    std::string id;
    /// Effective detuning in effective mode, bare detuning in physical mode.
    double detuning = 0.0;
    double decay = 0.0;
    /// Drive amplitude; only read in physical mode.
    Complex drive = 0.0;

    bool operator==(const CavityMode&) const = default;
};

struct MechanicalMode {
    std::string id;
    double frequency = 1.0;
    double damping = 0.0;
    double thermal_occupation = 0.0;

    bool operator==(const MechanicalMode&) const = default;
};

/// Optomechanical edges run cavity -> mechanical. Their strength is the
/// linearized G in effective mode and the single-photon g in physical mode.
/// Hopping strengths (J, eta) are always used directly.
struct CouplingEdge {
    EdgeKind kind = EdgeKind::optomechanical;
    std::string from;
    std::string to;
    Complex strength = 0.0;

    bool operator==(const CouplingEdge&) const = default;
};

struct SystemConfig {
    std::vector<CavityMode> cavities;
    std::vector<MechanicalMode> mechanicals;
    std::vector<CouplingEdge> edges;
    ParameterMode parameter_mode = ParameterMode::effective;
    Topology topology = Topology::generic;

    bool operator==(const SystemConfig&) const = default;
};

/// Edge with endpoints resolved to canonical (non-daggered) indices.
struct ResolvedEdge {
    EdgeKind kind;
    std::size_t from;
    std::size_t to;
    Complex strength;
    /// Position of the edge in SystemConfig::edges.
    std::size_t source;
};

/// A configuration that passed validate_config. Immutable.
class ValidatedConfig {
public:
    const SystemConfig& config() const noexcept { return config_; }
    const std::vector<ResolvedEdge>& edges() const noexcept { return edges_; }

    std::size_t cavity_count() const noexcept { return config_.cavities.size(); }
    std::size_t mechanical_count() const noexcept { return config_.mechanicals.size(); }
    /// M: number of non-daggered modes.
    std::size_t mode_count() const noexcept { return cavity_count() + mechanical_count(); }
    std::size_t dimension() const noexcept { return 2 * mode_count(); }

    /// Canonical index of a mode id, if present.
    std::optional<std::size_t> index_of(std::string_view id) const;

private:
    friend ValidatedConfig validate_config(SystemConfig config);
    ValidatedConfig(SystemConfig config, std::vector<ResolvedEdge> edges)
        : config_(std::move(config)), edges_(std::move(edges)) {}

    SystemConfig config_;
    std::vector<ResolvedEdge> edges_;
};

/// Enforce every configuration invariant; throws ConfigError.
///
/// Checks: at least one cavity and one mechanical mode; unique ids; finite
/// rates with decay, damping, thermal occupation >= 0 and frequency > 0;
/// edge endpoints exist and match the edge kind; no self loops; at most one
/// edge per unordered pair per kind. A non-generic topology tag must match
/// the declared graph shape.
ValidatedConfig validate_config(SystemConfig config);

/// Topology implied by the graph shape (generic when nothing else fits).
Topology infer_topology(const SystemConfig& config);

struct SteadyAmplitudes {
    std::vector<Complex> cavity_amplitudes;
    std::vector<Complex> mechanical_displacements;
    std::vector<double> effective_detunings;
    /// Linearized G = g * alpha, one per optomechanical edge, in edge order.
    std::vector<Complex> linearized_couplings;
    /// Index into SystemConfig::edges for each linearized coupling.
    std::vector<std::size_t> coupling_edges;
    /// Phase phi_c with alpha_c * exp(i phi_c) real and nonnegative; rotating
    /// cavity c by it makes the couplings it carries real.
    std::vector<double> cavity_phases;
    bool converged = false;
    std::size_t iterations = 0;
    double residual = 0.0;
};

struct SteadyStateOptions {
    double tolerance = 1e-12;
    std::size_t max_iterations = 10000;
    double damping = 0.5;
};

/// Coherent steady state of a driven physical-mode configuration.
///
/// Damped fixed-point iteration on the mechanical displacements. Each sweep
/// solves the linear cavity equations (drive + photon hopping) exactly for
/// the current detuning shift, then the linear mechanical equations (radiation
/// pressure + phonon hopping), and mixes the new displacements with the old
/// ones. Throws ConvergenceError after max_iterations.
SteadyAmplitudes solve_steady_amplitudes(const ValidatedConfig& config,
                                         const SteadyStateOptions& options = {});

/// Effective-mode configuration equivalent to a solved physical one: cavity
/// detunings replaced by the shifted ones, optomechanical strengths by G.
SystemConfig effective_config(const ValidatedConfig& physical, const SteadyAmplitudes& amplitudes);

/// A = [[E, F], [F*, E*]], dimension 2M.
struct DriftMatrix {
    Eigen::MatrixXcd entries;

    std::size_t dimension() const noexcept { return static_cast<std::size_t>(entries.rows()); }
    std::size_t mode_count() const noexcept { return dimension() / 2; }
    Eigen::MatrixXcd upper_left() const;
    Eigen::MatrixXcd upper_right() const;
};

/// Symmetric real Q = (C + C^T) / 2.
struct NoiseMatrix {
    Eigen::MatrixXd entries;

    std::size_t dimension() const noexcept { return static_cast<std::size_t>(entries.rows()); }
};

/// Drift matrix of an effective-mode configuration (strengths used as-is).
/// Throws ConfigError for a physical-mode configuration.
DriftMatrix build_drift_matrix(const ValidatedConfig& config);

/// Drift matrix of a physical-mode configuration at a solved steady state.
DriftMatrix build_drift_matrix(const ValidatedConfig& config, const SteadyAmplitudes& amplitudes);

NoiseMatrix build_noise_matrix(const ValidatedConfig& config);

}  // namespace omcool
