#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "omcool/darkmode.hpp"
#include "omcool/errors.hpp"
#include "omcool/pipeline.hpp"

using namespace omcool;

namespace {

std::set<std::string> dark_labels(const std::vector<ChannelConfiguration>& entries) {
    std::set<std::string> out;
    for (const auto& e : entries)
        if (e.report.dark_present) out.insert(e.label);
    return out;
}

}  // namespace

TEST_CASE("symmetric reduction without hopping") {
    const double g = 0.05, gs1 = 0.08;
    const auto h = hybridize(g, g, 1.0, 1.0, 0.0, gs1, 0.0);
    CHECK(std::abs(h.zeta) < 1e-15);
    CHECK(std::abs(h.omega_plus - 1.0) < 1e-15);
    CHECK(std::abs(h.omega_minus - 1.0) < 1e-15);
    CHECK(std::abs(h.g_plus - std::sqrt(2.0) * g) < 1e-15);
    CHECK(std::abs(h.gs_plus - gs1 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(h.gs_minus - gs1 / std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("frequency mismatch with equal couplings") {
    const auto h = hybridize(0.05, 0.05, 1.0, 1.1, 0.0, 0.0, 0.0);
    CHECK(std::abs(h.zeta - (-0.05)) < 1e-14);
}

TEST_CASE("default four-mode couplings cancel both residuals") {
    const auto h = hybridize(0.05, 0.05, 1.0, 1.0, 0.03, 0.08, 0.08);
    CHECK(std::abs(h.zeta) < 1e-15);
    CHECK(std::abs(h.gs_minus) < 1e-15);
}

TEST_CASE("hybridize rejects vanishing couplings") {
    CHECK_THROWS_AS(hybridize(0.0, 0.0, 1.0, 1.0, 0.0, 0.1, 0.1), DomainError);
}

TEST_CASE("hybrid identities on random inputs") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const double g1 = u(rng), g2 = u(rng), w1 = 0.5 + u(rng), w2 = 0.5 + u(rng);
        const double eta = u(rng) - 0.5, gs1 = u(rng), gs2 = u(rng);
        const auto h = hybridize(g1, g2, w1, w2, eta, gs1, gs2);
        CHECK(std::abs(h.omega_plus + h.omega_minus - (w1 + w2)) < 1e-12);
        CHECK(std::abs(h.gs_plus * h.gs_plus + h.gs_minus * h.gs_minus - (gs1 * gs1 + gs2 * gs2)) < 1e-12);
        CHECK((h.transform.transpose() * h.transform - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-14);
        CHECK(std::abs(h.g_plus - std::hypot(g1, g2)) < 1e-15);

        // The transform carries the mechanical block and the couplings into
        // hybrid form: T H T^T has omega_plus, omega_minus on the diagonal and
        // zeta off it; T (G1, G2) = (G+, 0); T (Gs1, Gs2) = (Gs+, Gs-).
        Eigen::Matrix2d block;
        block << w1, eta, eta, w2;
        const Eigen::Matrix2d rotated = h.transform * block * h.transform.transpose();
        CHECK(std::abs(rotated(0, 0) - h.omega_plus) < 1e-12);
        CHECK(std::abs(rotated(1, 1) - h.omega_minus) < 1e-12);
        CHECK(std::abs(rotated(0, 1) - h.zeta) < 1e-12);
        const Eigen::Vector2d bright = h.transform * Eigen::Vector2d(g1, g2);
        CHECK(std::abs(bright(0) - h.g_plus) < 1e-12);
        CHECK(std::abs(bright(1)) < 1e-12);
        const Eigen::Vector2d aux = h.transform * Eigen::Vector2d(gs1, gs2);
        CHECK(std::abs(aux(0) - h.gs_plus) < 1e-12);
        CHECK(std::abs(aux(1) - h.gs_minus) < 1e-12);
    }
}

TEST_CASE("proportional auxiliary couplings keep the dark mode") {
    auto p = fixtures::TwoMode{};
    p.eta = 0.0;
    p.g1 = 0.04;
    p.g2 = 0.06;
    p.gs1 = 0.02;
    p.gs2 = 0.03;
    const auto report = dark_mode_condition(validate_config(fixtures::network4(p)));
    CHECK(report.dark_present);
    CHECK(report.breaking_channels.empty());
}

TEST_CASE("asymmetric auxiliary coupling breaks the dark mode") {
    auto p = fixtures::TwoMode{};
    p.gs2 = 0.02;
    const auto report = dark_mode_condition(validate_config(fixtures::network4(p)));
    CHECK_FALSE(report.dark_present);
    CHECK(report.gs_minus_residual > 1e-3);
    CHECK(report.zeta_residual < 1e-10);
    REQUIRE(report.breaking_channels.size() == 1);
    CHECK(report.breaking_channels[0].find("auxiliary") != std::string::npos);
}

TEST_CASE("phonon hopping with unequal couplings breaks the dark mode") {
    auto p = fixtures::TwoMode{};
    p.g1 = 0.04;
    p.g2 = 0.06;
    p.gs1 = p.gs2 = 0.0;
    const auto report = dark_mode_condition(validate_config(fixtures::network4(p)));
    CHECK_FALSE(report.dark_present);
    CHECK(report.zeta_residual > 1e-3);
    REQUIRE(report.breaking_channels.size() == 1);
    CHECK(report.breaking_channels[0].find("zeta") != std::string::npos);
}

TEST_CASE("photon hopping has no influence on the dark-mode flag") {
    for (double j : {0.0, 0.03, 0.5}) {
        auto p = fixtures::TwoMode{};
        p.j = j;
        const auto report = dark_mode_condition(validate_config(fixtures::network4(p)));
        CHECK(report.dark_present);
        p.gs2 = 0.0;
        CHECK_FALSE(dark_mode_condition(validate_config(fixtures::network4(p))).dark_present);
    }
}

TEST_CASE("dark-mode condition rejects complex couplings and wrong topologies") {
    auto cfg = fixtures::network4();
    cfg.edges[0].strength = Complex(0.05, 0.01);
    CHECK_THROWS_AS(dark_mode_condition(validate_config(cfg)), DomainError);
    CHECK_THROWS_AS(dark_mode_condition(validate_config(fixtures::chain(3, 0.1, 0.06))), DomainError);
    auto physical = fixtures::n_type();
    physical.parameter_mode = ParameterMode::physical;
    physical.cavities[0].drive = 1.0;
    CHECK_THROWS_AS(dark_mode_condition(validate_config(physical)), DomainError);
}

TEST_CASE("taxonomy of the default four-mode system") {
    const auto entries = classify_configurations(validate_config(fixtures::network4()));
    REQUIRE(entries.size() == 14);
    std::set<std::string> labels;
    for (const auto& e : entries) {
        labels.insert(e.label);
        CHECK(e.closed.size() >= 1);
        CHECK(e.closed.size() <= 3);
    }
    CHECK(labels.size() == 14);
    const std::set<std::string> expected{"J=0", "eta=0", "J=eta=0", "Gs1=Gs2=0", "J=Gs1=Gs2=0", "Gs1=Gs2=eta=0"};
    CHECK(dark_labels(entries) == expected);
}

TEST_CASE("taxonomy with unequal optomechanical couplings and open hopping") {
    auto p = fixtures::TwoMode{};
    p.g1 = 0.04;
    p.g2 = 0.06;
    for (const auto& e : classify_configurations(validate_config(fixtures::network4(p)))) {
        const bool eta_open = std::find(e.closed.begin(), e.closed.end(), Channel::eta) == e.closed.end();
        if (eta_open) CHECK_FALSE(e.report.dark_present);
    }
}

TEST_CASE("taxonomy with the auxiliary couplings already off") {
    auto p = fixtures::TwoMode{};
    p.gs1 = p.gs2 = 0.0;
    for (const auto& e : classify_configurations(validate_config(fixtures::network4(p)))) CHECK(e.report.dark_present);
}

TEST_CASE("taxonomy rejects a non-network base") {
    CHECK_THROWS_AS(classify_configurations(validate_config(fixtures::n_type())), DomainError);
}

TEST_CASE("closed channels become zero-strength edges") {
    const auto base = validate_config(fixtures::network4());
    const auto closed = close_channels(base, {Channel::j, Channel::gs2});
    for (const auto& e : closed.edges) {
        if (e.kind == EdgeKind::photon_hop) CHECK(e.strength == Complex{});
        if (e.kind == EdgeKind::optomechanical && e.from == "as" && e.to == "b2") CHECK(e.strength == Complex{});
        if (e.kind == EdgeKind::phonon_hop) CHECK(e.strength == Complex(0.03));
    }
}

TEST_CASE("chain of two") {
    const double w = 1.0, eta = 0.06, g = 0.05;
    const auto modes = chain_modes(2, w, eta, g, 0.1);
    CHECK(std::abs(modes.frequencies[0] - (w + eta)) < 1e-15);
    CHECK(std::abs(modes.frequencies[1] - (w - eta)) < 1e-15);
    CHECK(std::abs(modes.cavity_couplings[0] - std::sqrt(2.0) * g) < 1e-15);
    CHECK(std::abs(modes.cavity_couplings[1]) < 1e-15);
    CHECK(modes.dark_to_cavity == std::vector<bool>{false, true});
}

TEST_CASE("chain of three") {
    const double g = 0.05;
    const auto modes = chain_modes(3, 1.0, 0.06, g, 0.1);
    CHECK(std::abs(modes.frequencies[1] - 1.0) < 1e-15);
    CHECK(std::abs(modes.cavity_couplings[1]) < 1e-12);
    CHECK(std::abs(modes.cavity_couplings[0] - g / std::sqrt(2.0) * (1.0 + std::sqrt(2.0))) < 1e-15);
}

TEST_CASE("chain sine sums vanish for even k up to N = 50") {
    for (std::size_t n = 2; n <= 50; ++n) {
        const auto modes = chain_modes(n, 1.0, 0.06, 1.0, 1.0);
        const double step = std::numbers::pi / static_cast<double>(n + 1);
        for (std::size_t k = 1; k <= n; ++k) {
            double sum = 0.0;
            for (std::size_t l = 1; l <= n; ++l) sum += std::sin(static_cast<double>(l * k) * step);
            if (k % 2 == 0) {
                CHECK(std::abs(sum) < 1e-12);
                CHECK(std::abs(modes.cavity_couplings[k - 1]) < 1e-12);
            } else {
                CHECK(std::abs(modes.cavity_couplings[k - 1]) > 1e-3);
            }
            CHECK(std::abs(modes.aux_couplings[k - 1]) > 0.0);
            CHECK(modes.dark_to_cavity[k - 1] == (k % 2 == 0));
        }
        const auto t = modes.transform;
        CHECK((t.transpose() * t - Eigen::MatrixXd::Identity(t.rows(), t.cols())).cwiseAbs().maxCoeff() < 1e-12);
        double trace = 0.0;
        for (double f : modes.frequencies) trace += f;
        CHECK(std::abs(trace - static_cast<double>(n)) < 1e-12);
    }
}

TEST_CASE("chain frequencies match tridiagonal diagonalization") {
    for (std::size_t n = 2; n <= 50; ++n) {
        const double w = 1.0, eta = 0.06;
        const auto modes = chain_modes(n, w, eta, 0.05, 0.1);
        const auto size = static_cast<Eigen::Index>(n);
        Eigen::MatrixXd h = Eigen::MatrixXd::Identity(size, size) * w;
        for (Eigen::Index l = 0; l + 1 < size; ++l) h(l, l + 1) = h(l + 1, l) = eta;
        const Eigen::VectorXd oracle = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(h).eigenvalues();
        auto closed = modes.frequencies;
        std::sort(closed.begin(), closed.end());
        for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(closed[k] - oracle(static_cast<Eigen::Index>(k))) < 1e-10);
    }
}

TEST_CASE("numerical chain modes agree with the closed form on a uniform chain") {
    const std::size_t n = 5;
    const auto closed = chain_modes(n, 1.0, 0.06, 0.05, 0.1);
    const auto numerical = chain_modes_numerical(std::vector<double>(n, 1.0), std::vector<double>(n - 1, 0.06),
                                                 std::vector<double>(n, 0.05), 0.1);
    // Numerical frequencies ascend; the closed form descends in k for eta > 0.
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t j = n - 1 - k;
        CHECK(std::abs(numerical.frequencies[j] - closed.frequencies[k]) < 1e-12);
        CHECK(std::abs(std::abs(numerical.cavity_couplings[j]) - std::abs(closed.cavity_couplings[k])) < 1e-12);
        CHECK(std::abs(std::abs(numerical.aux_couplings[j]) - std::abs(closed.aux_couplings[k])) < 1e-12);
        CHECK(numerical.dark_to_cavity[j] == closed.dark_to_cavity[k]);
    }
}

TEST_CASE("non-uniform chain configuration falls back to diagonalization") {
    auto cfg = fixtures::chain(3, 0.1, 0.06);
    cfg.mechanicals[2].frequency = 1.05;
    const auto modes = chain_modes(validate_config(cfg));
    CHECK(std::is_sorted(modes.frequencies.begin(), modes.frequencies.end()));
    double trace = 0.0;
    for (double f : modes.frequencies) trace += f;
    CHECK(std::abs(trace - 3.05) < 1e-12);

    const auto uniform = chain_modes(validate_config(fixtures::chain(3, 0.1, 0.06)));
    CHECK(uniform.dark_to_cavity == std::vector<bool>{false, true, false});
}

TEST_CASE("chain errors") {
    CHECK_THROWS_AS(chain_modes(1, 1.0, 0.06, 0.05, 0.1), DomainError);
    CHECK_THROWS_AS(chain_modes(validate_config(fixtures::n_type())), DomainError);
}

TEST_CASE("dark flag predicts cooling at the default drive and damping") {
    const auto base = validate_config(fixtures::network4());
    for (const auto& e : classify_configurations(base)) {
        const auto result = solve_point(validate_config(e.config));
        REQUIRE(result.stability.stable);
        const double hottest = std::max(result.phonons[0], result.phonons[1]);
        if (e.report.dark_present) CHECK(hottest > 0.1 * 1000.0);
        else CHECK(hottest < 1.0);
    }
}
