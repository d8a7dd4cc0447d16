#include "omcool/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "omcool/errors.hpp"

namespace omcool {

StabilityReport stability(const DriftMatrix& a, double margin) {
    if (a.entries.rows() != a.entries.cols()) throw DomainError("drift matrix is not square");
    if (!a.entries.allFinite()) throw SolverError("drift matrix has non-finite entries");

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(a.entries, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) throw SolverError("eigenvalue computation of the drift matrix failed");

    StabilityReport report;
    const auto& values = solver.eigenvalues();
    report.eigenvalues.assign(values.data(), values.data() + values.size());
    report.max_real_part = -std::numeric_limits<double>::infinity();
    for (const auto& z : report.eigenvalues) report.max_real_part = std::max(report.max_real_part, z.real());
    report.stable = report.max_real_part < -margin;
    return report;
}

namespace {

Eigen::MatrixXcd solve_vectorized(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& q) {
    const Eigen::Index n = a.rows();
    // Column-major vec: vec(A V) = (I ⊗ A) vec V, vec(V A^T) = (A ⊗ I) vec V.
    Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(n * n, n * n);
    for (Eigen::Index j = 0; j < n; ++j) {
        k.block(j * n, j * n, n, n) += a;
        for (Eigen::Index i = 0; i < n; ++i) {
            const Complex aij = a(i, j);
            if (aij == Complex{}) continue;
            for (Eigen::Index r = 0; r < n; ++r) k(i * n + r, j * n + r) += aij;
        }
    }
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(k);
    const Eigen::VectorXcd rhs = -Eigen::Map<const Eigen::VectorXcd>(q.data(), n * n);
    Eigen::VectorXcd x = lu.solve(rhs);
    if (!x.allFinite()) throw SolverError("singular Lyapunov system (marginal stability)");
    return Eigen::Map<Eigen::MatrixXcd>(x.data(), n, n);
}

Eigen::MatrixXcd solve_schur(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& q) {
    const Eigen::Index n = a.rows();
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(a);
    if (schur.info() != Eigen::Success) throw SolverError("Schur decomposition of the drift matrix failed");
    const Eigen::MatrixXcd& t = schur.matrixT();
    const Eigen::MatrixXcd& u = schur.matrixU();

    // With A = U T U*, Y = U* V conj(U) solves T Y + Y T^T = -U* Q conj(U).
    Eigen::MatrixXcd r = -(u.adjoint() * q * u.conjugate());
    Eigen::MatrixXcd y(n, n);
    const double scale = std::max(1.0, t.cwiseAbs().maxCoeff());
    for (Eigen::Index j = n - 1; j >= 0; --j) {
        Eigen::VectorXcd rhs = r.col(j);
        for (Eigen::Index k = j + 1; k < n; ++k) rhs -= t(j, k) * y.col(k);
        Eigen::MatrixXcd shifted = t.triangularView<Eigen::Upper>();
        shifted.diagonal().array() += t(j, j);
        if (shifted.diagonal().cwiseAbs().minCoeff() <= 1e-14 * scale)
            throw SolverError("singular Lyapunov system (marginal stability)");
        y.col(j) = shifted.triangularView<Eigen::Upper>().solve(rhs);
    }
    return u * y * u.transpose();
}

}  // namespace

double lyapunov_residual(const DriftMatrix& a, const NoiseMatrix& q, const CovarianceMatrix& v) {
    const Eigen::MatrixXcd r =
        a.entries * v.entries + v.entries * a.entries.transpose() + q.entries.cast<Complex>();
    return r.cwiseAbs().maxCoeff();
}

CovarianceMatrix solve_lyapunov(const DriftMatrix& a, const NoiseMatrix& q, const LyapunovOptions& options) {
    if (a.entries.rows() != a.entries.cols() || q.entries.rows() != a.entries.rows() ||
        q.entries.cols() != a.entries.cols())
        throw DomainError("drift and noise matrices must be square with equal dimension");
    if (options.check_stability) {
        const auto report = stability(a, options.stability_margin);
        if (!report.stable)
            throw UnstableSystemError("drift matrix is not stable (max real part " +
                                      std::to_string(report.max_real_part) + ")");
    }

    const Eigen::MatrixXcd qc = q.entries.cast<Complex>();
    CovarianceMatrix v;
    v.entries = options.method == LyapunovMethod::vectorized ? solve_vectorized(a.entries, qc)
                                                             : solve_schur(a.entries, qc);
    v.entries = 0.5 * (v.entries + v.entries.transpose()).eval();

    const double residual = lyapunov_residual(a, q, v);
    const double bound = options.residual_tolerance * std::max(1.0, q.entries.cwiseAbs().maxCoeff());
    if (!(residual <= bound))
        throw SolverError("Lyapunov residual " + std::to_string(residual) + " exceeds " + std::to_string(bound));
    return v;
}

Eigen::MatrixXcd thermal_initial_covariance(const ValidatedConfig& config) {
    const auto m = static_cast<Eigen::Index>(config.mode_count());
    const auto cavities = static_cast<Eigen::Index>(config.cavity_count());
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(2 * m, 2 * m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const double occupation =
            i < cavities ? 0.0 : config.config().mechanicals[static_cast<std::size_t>(i - cavities)].thermal_occupation;
        v(i, m + i) = v(m + i, i) = occupation + 0.5;
    }
    return v;
}

PhononReport phonon_numbers(const CovarianceMatrix& v, const ValidatedConfig& config) {
    if (v.dimension() != config.dimension())
        throw DomainError("covariance dimension " + std::to_string(v.dimension()) +
                          " does not match the configuration (" + std::to_string(config.dimension()) + ")");
    const auto m = static_cast<Eigen::Index>(config.mode_count());

    auto occupation = [&](Eigen::Index i) {
        const Complex moment = v.entries(m + i, i);
        if (std::abs(moment.imag()) > 1e-6)
            throw SolverError("second moment <u_" + std::to_string(m + i) + " u_" + std::to_string(i) +
                              "> has imaginary part " + std::to_string(moment.imag()));
        const double n = moment.real() - 0.5;
        if (n < -1e-9) throw SolverError("negative occupation " + std::to_string(n) + " from the covariance");
        return n;
    };

    PhononReport report;
    const auto cavities = static_cast<Eigen::Index>(config.cavity_count());
    for (Eigen::Index i = 0; i < m; ++i) {
        const double n = occupation(i);
        auto& raw = i < cavities ? report.cavity_raw : report.mechanical_raw;
        auto& clamped = i < cavities ? report.cavity : report.mechanical;
        raw.push_back(n);
        clamped.push_back(std::max(0.0, n));
    }
    return report;
}

}  // namespace omcool
