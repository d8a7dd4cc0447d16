#pragma once

// Steady-state covariance of du/dt = A u + N:  A V + V A^T = -Q.

#include <vector>

#include <Eigen/Dense>

#include "omcool/model.hpp"

namespace omcool {

struct StabilityReport {
    std::vector<Complex> eigenvalues;
    double max_real_part = 0.0;
    bool stable = false;
};

inline constexpr double default_stability_margin = 1e-9;

/// Dense eigenvalues of A; stable iff every real part is below -margin.
/// Throws SolverError when the eigensolver fails (e.g. NaN entries).
StabilityReport stability(const DriftMatrix& a, double margin = default_stability_margin);

/// Symmetric complex V_ij = <u_i u_j + u_j u_i> / 2.
struct CovarianceMatrix {
    Eigen::MatrixXcd entries;

    std::size_t dimension() const noexcept { return static_cast<std::size_t>(entries.rows()); }
};

enum class LyapunovMethod {
    /// (I ⊗ A + A ⊗ I) vec(V) = -vec(Q), dense LU of size (2M)^2.
    vectorized,
    /// Complex Schur form of A, then a back substitution over columns.
    schur,
};

struct LyapunovOptions {
    LyapunovMethod method = LyapunovMethod::vectorized;
    double stability_margin = default_stability_margin;
    /// Accept V only if ||A V + V A^T + Q||_max <= tolerance * max(1, ||Q||_max).
    double residual_tolerance = 1e-9;
    bool check_stability = true;
};

/// Throws UnstableSystemError when A fails the stability test and
/// SolverError on a singular system or a failed residual check.
CovarianceMatrix solve_lyapunov(const DriftMatrix& a, const NoiseMatrix& q, const LyapunovOptions& options = {});

/// ||A V + V A^T + Q||_max.
double lyapunov_residual(const DriftMatrix& a, const NoiseMatrix& q, const CovarianceMatrix& v);

struct IntegrationOptions {
    double relative_tolerance = 1e-10;
    double absolute_tolerance = 1e-13;
    double initial_step = 1e-2;
    std::size_t max_steps = 50'000'000;
};

/// V(t_end) from dV/dt = A V + V A^T + Q, V(0) = initial, by adaptive
/// Dormand-Prince 5(4) stepping. Independent of solve_lyapunov; used as its
/// oracle. Throws SolverError on step-size underflow or step budget exhaustion.
CovarianceMatrix integrate_covariance(const DriftMatrix& a, const NoiseMatrix& q, double t_end,
                                      const Eigen::MatrixXcd& initial, const IntegrationOptions& options = {});

/// Uncoupled equilibrium: vacuum cavities (1/2), thermal mechanics (n + 1/2)
/// on the (mode, mode†) pairs.
Eigen::MatrixXcd thermal_initial_covariance(const ValidatedConfig& config);

struct PhononReport {
    /// n_l = Re V[M + C + l, C + l] - 1/2, raw values.
    std::vector<double> mechanical_raw;
    std::vector<double> cavity_raw;
    /// Same, clamped at 0 for reporting.
    std::vector<double> mechanical;
    std::vector<double> cavity;
};

/// Throws SolverError when an extracted moment has |imaginary part| > 1e-6,
/// or an occupation lies below -1e-9.
PhononReport phonon_numbers(const CovarianceMatrix& v, const ValidatedConfig& config);

}  // namespace omcool
