#pragma once

// Dark states of a driven Lambda-type three-level atom and their breaking by
// an auxiliary level (N-type four-level atom), in the rotating frame.
//
// Basis order: |e>, |f>, |g> (, |d>). Couplings: e-g with Omega1, e-f with
// Omega2, d-f with Omega3. Level energies drop out of the rotating frame and
// are not represented.

#include <array>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace omcool {

struct LevelSystem {
    int level_count = 3;
    double omega1 = 1.0;
    double omega2 = 1.0;
    double omega3 = 0.0;
    double delta1 = 0.0;
    double delta3 = 0.0;
};

struct AtomicEigenReport {
    /// Ordered by |lambda|, ties broken by lambda (so the dark eigenvalue 0 of
    /// the three-level atom comes first, followed by -, +).
    std::vector<double> eigenvalues;
    /// Column s is the eigenstate of eigenvalues[s].
    Eigen::MatrixXd eigenstates;
    /// |<e|lambda_s>|^2. Within a degenerate eigenvalue cluster each member
    /// gets the cluster's total projection divided by the cluster size.
    std::vector<double> excited_probabilities;
    /// Indices with excited-state probability below dark_state_epsilon.
    std::vector<std::size_t> dark_states;
};

inline constexpr double dark_state_epsilon = 1e-12;

Eigen::MatrixXd level_hamiltonian(const LevelSystem& system);

/// Numerical diagonalization of any level system. Throws DomainError for a
/// level count other than 3 or 4 or Omega2 <= 0.
AtomicEigenReport eigensystem(const LevelSystem& system);

/// Resonant three-level atom, xi = Omega1 / Omega2.
AtomicEigenReport three_level_eigensystem(double xi, double omega2);

/// Resonant four-level atom with Omega1 = Omega2 = Omega', xi' = Omega3 / Omega'.
AtomicEigenReport four_level_eigensystem(double xi_prime, double omega_prime);

/// {0, -Omega2 sqrt(1 + xi^2), +Omega2 sqrt(1 + xi^2)}.
std::array<double, 3> three_level_closed_form(double xi, double omega2);

/// +-Omega' sqrt((2 + xi'^2 +- sqrt((2 + xi'^2)^2 - 4 xi'^2)) / 2), in the
/// report ordering (inner pair -, +, then outer pair -, +).
std::array<double, 4> four_level_closed_form(double xi_prime, double omega_prime);

}  // namespace omcool
