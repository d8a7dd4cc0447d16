#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "fixtures.hpp"
#include "omcool/errors.hpp"
#include "omcool/lyapunov.hpp"
#include "omcool/pipeline.hpp"

using namespace omcool;

namespace {

DriftMatrix drift(const Eigen::MatrixXcd& a) { return DriftMatrix{a}; }
NoiseMatrix noise(const Eigen::MatrixXd& q) { return NoiseMatrix{q}; }

CovarianceMatrix solve(const ValidatedConfig& v, LyapunovMethod method = LyapunovMethod::vectorized) {
    LyapunovOptions options;
    options.method = method;
    return solve_lyapunov(build_drift_matrix(v), build_noise_matrix(v), options);
}

std::vector<double> phonons(const SystemConfig& cfg) {
    const auto v = validate_config(cfg);
    return phonon_numbers(solve(v), v).mechanical;
}

// Independent route: rotate to real quadratures x = (u + u^†)/sqrt2,
// p = -i (u - u^†)/sqrt2, solve the real Lyapunov equation by Kronecker
// vectorization, rotate back.
Eigen::MatrixXcd quadrature_oracle(const Eigen::MatrixXcd& a, const Eigen::MatrixXd& q) {
    const Eigen::Index n = a.rows(), m = n / 2;
    const double s = 1.0 / std::sqrt(2.0);
    const Complex i{0.0, 1.0};
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index k = 0; k < m; ++k) {
        t(k, k) = s;
        t(k, m + k) = s;
        t(m + k, k) = -i * s;
        t(m + k, m + k) = i * s;
    }
    const Eigen::MatrixXcd tinv = t.inverse();
    const Eigen::MatrixXcd ar_c = t * a * tinv;
    const Eigen::MatrixXcd qr_c = t * q.cast<Complex>() * t.transpose();
    REQUIRE(ar_c.imag().cwiseAbs().maxCoeff() < 1e-12);
    REQUIRE(qr_c.imag().cwiseAbs().maxCoeff() < 1e-12);
    const Eigen::MatrixXd ar = ar_c.real(), qr = qr_c.real();

    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd k(n * n, n * n);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c)
            k.block(r * n, c * n, n, n) = id(r, c) * ar + ar(r, c) * id;
    const Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(qr.data(), n * n);
    const Eigen::VectorXd x = k.partialPivLu().solve(rhs);
    const Eigen::MatrixXd vr = Eigen::Map<const Eigen::MatrixXd>(x.data(), n, n);
    return tinv * vr.cast<Complex>() * tinv.transpose();
}

double normwise_gap(const Eigen::MatrixXcd& v, const Eigen::MatrixXcd& reference) {
    return (v - reference).cwiseAbs().maxCoeff() / reference.cwiseAbs().maxCoeff();
}

double relative_gap(const Eigen::MatrixXcd& v, const Eigen::MatrixXcd& reference, double floor) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < v.rows(); ++i)
        for (Eigen::Index j = 0; j < v.cols(); ++j)
            if (std::abs(reference(i, j)) > floor)
                worst = std::max(worst, std::abs(v(i, j) - reference(i, j)) / std::abs(reference(i, j)));
    return worst;
}

}  // namespace

TEST_CASE("stability of decoupled damped modes") {
    auto p = fixtures::TwoMode{};
    p.g1 = p.g2 = p.gs1 = 0.0;
    const auto report = stability(build_drift_matrix(validate_config(fixtures::n_type(p))));
    CHECK(report.stable);
    CHECK(report.max_real_part == doctest::Approx(-1e-5));
    REQUIRE(report.eigenvalues.size() == 8);
    int cavity_like = 0;
    for (auto z : report.eigenvalues) {
        cavity_like += std::abs(z.real() + 0.1) < 1e-14;
        CHECK(std::abs(std::abs(z.imag()) - 1.0) < 1e-14);
    }
    CHECK(cavity_like == 4);
}

TEST_CASE("stability of the cooling configuration") {
    CHECK(stability(build_drift_matrix(validate_config(fixtures::n_type()))).stable);
}

TEST_CASE("undamped resonators are marginal, hence unstable") {
    auto p = fixtures::TwoMode{};
    p.g1 = p.g2 = p.gs1 = 0.0;
    p.gamma = 0.0;
    const auto v = validate_config(fixtures::n_type(p));
    const auto report = stability(build_drift_matrix(v));
    CHECK_FALSE(report.stable);
    CHECK(report.max_real_part == 0.0);
    CHECK_THROWS_AS(solve(v), UnstableSystemError);
}

TEST_CASE("eigensolver failure on NaN input") {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(2, 2) * -1.0;
    a(0, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(stability(drift(a)), SolverError);
}

TEST_CASE("scalar Lyapunov balance") {
    for (auto method : {LyapunovMethod::vectorized, LyapunovMethod::schur}) {
        LyapunovOptions options;
        options.method = method;
        const auto v = solve_lyapunov(drift(Eigen::MatrixXcd::Constant(1, 1, -1.0)),
                                      noise(Eigen::MatrixXd::Constant(1, 1, 2.0)), options);
        CHECK(std::abs(v.entries(0, 0) - 1.0) < 1e-15);
    }
}

TEST_CASE("decoupled diagonal balance") {
    const Eigen::Vector4d a_diag(-0.5, -1.0, -2.0, -0.1);
    const Eigen::Vector4d q_diag(1.0, 0.3, 2.0, 0.7);
    for (auto method : {LyapunovMethod::vectorized, LyapunovMethod::schur}) {
        LyapunovOptions options;
        options.method = method;
        const auto v = solve_lyapunov(drift(a_diag.cast<Complex>().asDiagonal().toDenseMatrix()),
                                      noise(q_diag.asDiagonal().toDenseMatrix()), options);
        for (int i = 0; i < 4; ++i) CHECK(std::abs(v.entries(i, i) - (-q_diag(i) / (2 * a_diag(i)))) < 1e-14);
    }
}

TEST_CASE("Lyapunov solution matches time integration on the cooling configuration") {
    const auto cfg = validate_config(fixtures::n_type());
    const auto a = build_drift_matrix(cfg);
    const auto q = build_noise_matrix(cfg);
    const auto v = solve_lyapunov(a, q);
    const double rate = -stability(a).max_real_part;
    const auto integrated = integrate_covariance(a, q, 50.0 / rate, thermal_initial_covariance(cfg));
    CHECK(relative_gap(integrated.entries, v.entries, 1e-12) < 1e-6);
}

TEST_CASE("integration: null dynamics and the scalar closed form") {
    const auto a = drift(Eigen::MatrixXcd::Constant(1, 1, -1.0));
    const auto zero = integrate_covariance(a, noise(Eigen::MatrixXd::Zero(1, 1)), 3.0, Eigen::MatrixXcd::Zero(1, 1));
    CHECK(zero.entries(0, 0) == Complex{});
    for (double t : {0.1, 1.0, 4.0}) {
        const auto v = integrate_covariance(a, noise(Eigen::MatrixXd::Constant(1, 1, 2.0)), t, Eigen::MatrixXcd::Zero(1, 1));
        CHECK(std::abs(v.entries(0, 0) - (1.0 - std::exp(-2.0 * t))) < 1e-10);
    }
    CHECK_THROWS_AS(integrate_covariance(a, noise(Eigen::MatrixXd::Zero(1, 1)), 0.0, Eigen::MatrixXcd::Zero(1, 1)),
                    DomainError);
}

TEST_CASE("integration reports an exhausted step budget") {
    IntegrationOptions options;
    options.max_steps = 5;
    const auto a = drift(Eigen::MatrixXcd::Constant(1, 1, -1.0));
    CHECK_THROWS_AS(integrate_covariance(a, noise(Eigen::MatrixXd::Constant(1, 1, 2.0)), 100.0,
                                         Eigen::MatrixXcd::Zero(1, 1), options),
                    SolverError);
}

TEST_CASE("random systems: residual bound, symmetry, solver agreement, quadrature oracle") {
    std::mt19937 rng(20240611);
    int checked = 0;
    while (checked < 30) {
        const auto cfg = fixtures::random_config(rng, 8);
        const auto v = validate_config(cfg);
        const auto a = build_drift_matrix(v);
        const auto q = build_noise_matrix(v);
        if (!stability(a).stable) continue;
        ++checked;
        const auto vec = solve_lyapunov(a, q);
        LyapunovOptions schur;
        schur.method = LyapunovMethod::schur;
        const auto sch = solve_lyapunov(a, q, schur);
        const double qmax = q.entries.cwiseAbs().maxCoeff();
        CHECK(lyapunov_residual(a, q, vec) <= 1e-9 * std::max(1.0, qmax));
        CHECK(lyapunov_residual(a, q, sch) <= 1e-9 * std::max(1.0, qmax));
        CHECK(vec.entries == vec.entries.transpose());
        CHECK(normwise_gap(sch.entries, vec.entries) < 1e-9);
        CHECK(normwise_gap(quadrature_oracle(a.entries, q.entries), vec.entries) < 1e-9);
        for (double n : phonon_numbers(vec, v).mechanical_raw) CHECK(n >= -1e-9);
    }
}

TEST_CASE("decoupled modes keep their bath occupation") {
    auto p = fixtures::TwoMode{};
    p.g1 = p.g2 = p.gs1 = 0.0;
    p.nbar = 37.5;
    const auto v = validate_config(fixtures::n_type(p));
    const auto report = phonon_numbers(solve(v), v);
    for (double n : report.mechanical) CHECK(std::abs(n - 37.5) <= 1e-8 * 37.5);
    for (double n : report.cavity) CHECK(std::abs(n) < 1e-12);
}

TEST_CASE("cooling configuration reaches the ground state, first mode colder") {
    const auto n = phonons(fixtures::n_type());
    CHECK(n[0] < 1.0);
    CHECK(n[1] < 1.0);
    CHECK(n[0] < n[1]);
}

TEST_CASE("without the auxiliary coupling both modes stay near half the bath occupation") {
    auto p = fixtures::TwoMode{};
    p.gs1 = 0.0;
    const auto n = phonons(fixtures::n_type(p));
    for (double x : n) {
        CHECK(x > 400.0);
        CHECK(x < 600.0);
    }
}

TEST_CASE("relabeling identical resonators permutes phonon numbers") {
    auto p = fixtures::TwoMode{};
    p.g1 = 0.04;
    p.g2 = 0.06;
    p.gs2 = 0.02;
    auto cfg = fixtures::network4(p);
    const auto n = phonons(cfg);
    // Swap b1 and b2 by exchanging the coupling strengths they carry.
    std::swap(cfg.edges[0].strength, cfg.edges[1].strength);
    std::swap(cfg.edges[2].strength, cfg.edges[3].strength);
    const auto swapped = phonons(cfg);
    CHECK(std::abs(n[0] - swapped[1]) <= 1e-10);
    CHECK(std::abs(n[1] - swapped[0]) <= 1e-10);
}

TEST_CASE("exchanging Gs1 and Gs2 exchanges the phonon numbers") {
    auto p = fixtures::TwoMode{};
    p.gs1 = 0.02;
    p.gs2 = 0.08;
    const auto n = phonons(fixtures::network4(p));
    std::swap(p.gs1, p.gs2);
    const auto swapped = phonons(fixtures::network4(p));
    CHECK(std::abs(n[0] - swapped[1]) <= 1e-8);
    CHECK(std::abs(n[1] - swapped[0]) <= 1e-8);
}

TEST_CASE("phonon extraction rejects a complex diagonal moment") {
    const auto v = validate_config(fixtures::n_type());
    auto cov = solve(v);
    cov.entries(6, 2) += Complex(0.0, 1e-3);
    CHECK_THROWS_AS(phonon_numbers(cov, v), SolverError);
}

TEST_CASE("single-resonator reference is a finite cooled occupation") {
    const double n = single_resonator_reference(1.0, 0.1, 1.0, 1e-5, 1000.0, 0.05);
    CHECK(std::isfinite(n));
    CHECK(n > 0.0);
    CHECK(n < 1000.0);
}
