#pragma once

// Configurations built directly from figure parameters, independent of the
// preset registry.

#include <random>
#include <string>

#include "omcool/model.hpp"

namespace fixtures {

struct TwoMode {
    double delta_c = 1.0, kappa = 0.1, delta_s = 1.0, kappa_s = 0.1;
    double omega2 = 1.0, gamma = 1e-5, nbar = 1000.0;
    double g1 = 0.05, g2 = 0.05, gs1 = 0.08, gs2 = 0.08, j = 0.03, eta = 0.03;
};

inline omcool::SystemConfig n_type(const TwoMode& p = {}) {
    using omcool::EdgeKind;
    omcool::SystemConfig c;
    c.topology = omcool::Topology::n_type;
    c.cavities = {{"a", p.delta_c, p.kappa, 0.0}, {"as", p.delta_s, p.kappa_s, 0.0}};
    c.mechanicals = {{"b1", 1.0, p.gamma, p.nbar}, {"b2", p.omega2, p.gamma, p.nbar}};
    c.edges = {{EdgeKind::optomechanical, "a", "b1", p.g1},
               {EdgeKind::optomechanical, "a", "b2", p.g2},
               {EdgeKind::optomechanical, "as", "b1", p.gs1}};
    return c;
}

inline omcool::SystemConfig network4(const TwoMode& p = {}) {
    using omcool::EdgeKind;
    auto c = n_type(p);
    c.topology = omcool::Topology::network4;
    c.edges.push_back({EdgeKind::optomechanical, "as", "b2", p.gs2});
    c.edges.push_back({EdgeKind::photon_hop, "a", "as", p.j});
    c.edges.push_back({EdgeKind::phonon_hop, "b1", "b2", p.eta});
    return c;
}

inline omcool::SystemConfig chain(int n, double gs, double eta, double g = 0.05, double kappa = 0.1) {
    using omcool::EdgeKind;
    omcool::SystemConfig c;
    c.topology = omcool::Topology::chain;
    c.cavities = {{"a", 1.0, kappa, 0.0}, {"as", 1.0, 0.1, 0.0}};
    for (int l = 1; l <= n; ++l) {
        c.mechanicals.push_back({"b" + std::to_string(l), 1.0, 1e-5, 1000.0});
        c.edges.push_back({EdgeKind::optomechanical, "a", "b" + std::to_string(l), g});
    }
    c.edges.push_back({EdgeKind::optomechanical, "as", "b1", gs});
    for (int l = 1; l < n; ++l)
        c.edges.push_back({EdgeKind::phonon_hop, "b" + std::to_string(l), "b" + std::to_string(l + 1), eta});
    return c;
}

/// Random effective-mode graph with 2..max_modes modes: kappa in [0.1, 1],
/// gamma in [0.05, 0.5], frequencies and detunings in [0.5, 1.5], complex
/// couplings of modulus <= 0.1 on a random subset of allowed pairs.
inline omcool::SystemConfig random_config(std::mt19937& rng, int max_modes) {
    using omcool::EdgeKind;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto in = [&](double lo, double hi) { return lo + (hi - lo) * u(rng); };
    const int modes = std::uniform_int_distribution<int>(2, max_modes)(rng);
    const int cavities = std::uniform_int_distribution<int>(1, modes - 1)(rng);

    omcool::SystemConfig c;
    for (int i = 0; i < cavities; ++i) c.cavities.push_back({"c" + std::to_string(i), in(0.5, 1.5), in(0.1, 1.0), 0.0});
    for (int l = 0; l < modes - cavities; ++l)
        c.mechanicals.push_back({"m" + std::to_string(l), in(0.5, 1.5), in(0.05, 0.5), in(0.0, 20.0)});
    auto strength = [&] { return std::polar(in(0.0, 0.1), in(0.0, 6.283185307179586)); };
    for (const auto& cav : c.cavities)
        for (const auto& mech : c.mechanicals)
            if (u(rng) < 0.7) c.edges.push_back({EdgeKind::optomechanical, cav.id, mech.id, strength()});
    for (std::size_t i = 0; i < c.cavities.size(); ++i)
        for (std::size_t j = i + 1; j < c.cavities.size(); ++j)
            if (u(rng) < 0.5) c.edges.push_back({EdgeKind::photon_hop, c.cavities[i].id, c.cavities[j].id, strength()});
    for (std::size_t i = 0; i < c.mechanicals.size(); ++i)
        for (std::size_t j = i + 1; j < c.mechanicals.size(); ++j)
            if (u(rng) < 0.5)
                c.edges.push_back({EdgeKind::phonon_hop, c.mechanicals[i].id, c.mechanicals[j].id, strength()});
    return c;
}

}  // namespace fixtures
