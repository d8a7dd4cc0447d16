#include "omcool/atomic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "omcool/errors.hpp"

namespace omcool {

Eigen::MatrixXd level_hamiltonian(const LevelSystem& system) {
    if (system.level_count != 3 && system.level_count != 4)
        throw DomainError("level system must have 3 or 4 levels");
    if (!(system.omega2 > 0.0)) throw DomainError("Omega2 must be positive");

    constexpr int e = 0, f = 1, g = 2, d = 3;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(system.level_count, system.level_count);
    h(e, e) = system.delta1;
    h(e, g) = h(g, e) = system.omega1;
    h(e, f) = h(f, e) = system.omega2;
    if (system.level_count == 4) {
        h(d, d) = system.delta3;
        h(d, f) = h(f, d) = system.omega3;
    }
    return h;
}

AtomicEigenReport eigensystem(const LevelSystem& system) {
    const Eigen::MatrixXd h = level_hamiltonian(system);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    if (solver.info() != Eigen::Success) throw SolverError("level Hamiltonian diagonalization failed");

    const auto n = static_cast<std::size_t>(h.rows());
    const Eigen::VectorXd& values = solver.eigenvalues();  // ascending
    const Eigen::MatrixXd& vectors = solver.eigenvectors();

    // Projection of |e> onto each degenerate cluster, shared evenly.
    const double tol = 1e-9 * std::max(1.0, h.cwiseAbs().maxCoeff());
    std::vector<double> probability(n);
    for (std::size_t begin = 0; begin < n;) {
        std::size_t end = begin + 1;
        while (end < n && values(static_cast<Eigen::Index>(end)) - values(static_cast<Eigen::Index>(end - 1)) < tol)
            ++end;
        double total = 0.0;
        for (auto s = begin; s < end; ++s) total += vectors(0, static_cast<Eigen::Index>(s)) * vectors(0, static_cast<Eigen::Index>(s));
        for (auto s = begin; s < end; ++s) probability[s] = total / static_cast<double>(end - begin);
        begin = end;
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double va = values(static_cast<Eigen::Index>(a));
        const double vb = values(static_cast<Eigen::Index>(b));
        const double ma = std::abs(va), mb = std::abs(vb);
        if (std::abs(ma - mb) >= tol) return ma < mb;
        return va < vb - tol;
    });

    AtomicEigenReport report;
    report.eigenstates.resize(h.rows(), h.cols());
    for (std::size_t s = 0; s < n; ++s) {
        const auto src = static_cast<Eigen::Index>(order[s]);
        report.eigenvalues.push_back(values(src));
        Eigen::VectorXd v = vectors.col(src);
        for (Eigen::Index i = 0; i < v.size(); ++i)
            if (std::abs(v(i)) > 1e-12) {
                if (v(i) < 0.0) v = -v;
                break;
            }
        report.eigenstates.col(static_cast<Eigen::Index>(s)) = v;
        report.excited_probabilities.push_back(probability[order[s]]);
        if (probability[order[s]] < dark_state_epsilon) report.dark_states.push_back(s);
    }
    return report;
}

AtomicEigenReport three_level_eigensystem(double xi, double omega2) {
    if (!(omega2 > 0.0)) throw DomainError("Omega2 must be positive");
    return eigensystem({.level_count = 3, .omega1 = xi * omega2, .omega2 = omega2});
}

AtomicEigenReport four_level_eigensystem(double xi_prime, double omega_prime) {
    if (!(omega_prime > 0.0)) throw DomainError("Omega' must be positive");
    return eigensystem(
        {.level_count = 4, .omega1 = omega_prime, .omega2 = omega_prime, .omega3 = xi_prime * omega_prime});
}

std::array<double, 3> three_level_closed_form(double xi, double omega2) {
    const double r = omega2 * std::sqrt(1.0 + xi * xi);
    return {0.0, -r, r};
}

std::array<double, 4> four_level_closed_form(double xi_prime, double omega_prime) {
    const double s = 2.0 + xi_prime * xi_prime;
    const double root = std::sqrt(s * s - 4.0 * xi_prime * xi_prime);
    const double inner = omega_prime * std::sqrt((s - root) / 2.0);
    const double outer = omega_prime * std::sqrt((s + root) / 2.0);
    return {-inner, inner, -outer, outer};
}

}  // namespace omcool
