#pragma once

// Mechanical dark-mode analysis in the rotating-wave picture.
//
// For two mechanical modes coupled to an intermediate cavity with G1, G2 the
// hybrid modes are B+ = (G1 b1 + G2 b2)/G+ and B- = (G2 b1 - G1 b2)/G+ with
// G+ = sqrt(G1^2 + G2^2). B+ is bright (couples to the cavity with G+); B- is
// dark unless it couples to B+ (zeta) or to the auxiliary cavity (Gs-).

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "omcool/model.hpp"

namespace omcool {

struct HybridModes {
    double omega_plus = 0.0;
    double omega_minus = 0.0;
    /// Hybrid-hybrid coupling.
    double zeta = 0.0;
    double g_plus = 0.0;
    double gs_plus = 0.0;
    double gs_minus = 0.0;
    /// Rows map (b1, b2) to (B+, B-).
    Eigen::Matrix2d transform = Eigen::Matrix2d::Identity();
};

/// Throws DomainError when G1 = G2 = 0.
HybridModes hybridize(double g1, double g2, double omega1, double omega2, double eta, double gs1, double gs2);

inline constexpr double dark_mode_epsilon = 1e-10;

struct DarkModeReport {
    bool dark_present = false;
    double zeta_residual = 0.0;
    double gs_minus_residual = 0.0;
    std::vector<std::string> breaking_channels;
};

/// Couplings of the two-mechanical-mode systems in the hybrid-mode language.
struct TwoModeCouplings {
    double g1 = 0.0, g2 = 0.0, gs1 = 0.0, gs2 = 0.0;
    double omega1 = 1.0, omega2 = 1.0;
    double eta = 0.0, j = 0.0;
};

/// Read G1, G2 (intermediate cavity = cavities[0]), Gs1, Gs2 (auxiliary =
/// cavities[1]), eta, J and the mechanical frequencies from an effective-mode
/// n_type or network4 configuration. Missing edges read as zero.
/// Throws DomainError for other topologies, complex couplings, or G1, G2 < 0.
TwoModeCouplings two_mode_couplings(const ValidatedConfig& config);

/// Dark mode present iff |zeta| and |Gs-| both fall below dark_mode_epsilon.
/// J plays no role.
DarkModeReport dark_mode_condition(const ValidatedConfig& config);
DarkModeReport dark_mode_condition(const TwoModeCouplings& couplings);

/// The four optional channels of the network-coupled four-mode system.
enum class Channel { j, gs1, gs2, eta };
std::string to_string(Channel channel);

struct ChannelConfiguration {
    std::vector<Channel> closed;
    /// e.g. "J=Gs1=0".
    std::string label;
    SystemConfig config;
    DarkModeReport report;
};

/// The 14 ways of closing one to three of {J, Gs1, Gs2, eta} while keeping
/// G1 and G2 open, in the order (J), (Gs1), (Gs2), (eta), (J,Gs1), ...
/// Requires a network4 base with all four channel edges present.
std::vector<ChannelConfiguration> classify_configurations(const ValidatedConfig& base);

/// Copy of a network4 configuration with the given channels set to zero.
SystemConfig close_channels(const ValidatedConfig& base, const std::vector<Channel>& closed);

struct ChainModes {
    std::size_t n = 0;
    /// Omega_k = omega_m + 2 eta cos(k pi/(N+1)), k = 1..N.
    std::vector<double> frequencies;
    /// transform(l-1, k-1) = sin(l k pi/(N+1)) / D with D = sqrt((N+1)/2).
    Eigen::MatrixXd transform;
    /// (G/D) sum_l sin(l k pi/(N+1)).
    std::vector<double> cavity_couplings;
    /// Gs sin(k pi/(N+1)) / D.
    std::vector<double> aux_couplings;
    /// Even k: decoupled from the intermediate cavity.
    std::vector<bool> dark_to_cavity;
};

/// Closed-form normal modes of a uniform chain. Throws DomainError for N < 2.
ChainModes chain_modes(std::size_t n, double omega_m, double eta, double g, double gs);

/// Normal modes of an arbitrary nearest-neighbour chain by diagonalizing the
/// tridiagonal mechanical block. frequencies ascend; transform columns are
/// the eigenvectors (sign fixed so the first nonzero component is positive).
/// Coupling coefficients are G_l-weighted projections, aux uses Gs on b1.
ChainModes chain_modes_numerical(const std::vector<double>& omegas, const std::vector<double>& hoppings,
                                 const std::vector<double>& g, double gs);

/// Normal modes of an effective-mode chain configuration: the closed form when
/// frequencies, hoppings, and intermediate-cavity couplings are uniform, the
/// numerical diagonalization otherwise.
ChainModes chain_modes(const ValidatedConfig& config);

}  // namespace omcool
