#include "omcool/darkmode.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "omcool/errors.hpp"

namespace omcool {

namespace {

double real_strength(const ResolvedEdge& e) {
    if (e.strength.imag() != 0.0)
        throw DomainError("dark-mode analysis needs real coupling strengths (edge " + std::to_string(e.source) + ")");
    return e.strength.real();
}

std::string format(double value) {
    std::ostringstream os;
    os.precision(6);
    os << value;
    return os.str();
}

}  // namespace

HybridModes hybridize(double g1, double g2, double omega1, double omega2, double eta, double gs1, double gs2) {
    const double norm2 = g1 * g1 + g2 * g2;
    if (!(norm2 > 0.0)) throw DomainError("hybrid modes need G1^2 + G2^2 > 0");
    const double g_plus = std::sqrt(norm2);

    HybridModes h;
    h.g_plus = g_plus;
    h.omega_plus = (omega1 * g1 * g1 + omega2 * g2 * g2 + 2.0 * eta * g1 * g2) / norm2;
    h.omega_minus = (omega1 * g2 * g2 + omega2 * g1 * g1 - 2.0 * eta * g1 * g2) / norm2;
    h.zeta = ((omega1 - omega2) * g1 * g2 + eta * (g2 * g2 - g1 * g1)) / norm2;
    h.gs_plus = (gs1 * g1 + gs2 * g2) / g_plus;
    h.gs_minus = (gs1 * g2 - gs2 * g1) / g_plus;
    h.transform << g1 / g_plus, g2 / g_plus, g2 / g_plus, -g1 / g_plus;
    return h;
}

TwoModeCouplings two_mode_couplings(const ValidatedConfig& config) {
    const auto& cfg = config.config();
    if (cfg.topology != Topology::n_type && cfg.topology != Topology::network4)
        throw DomainError("dark-mode condition needs an n_type or network4 configuration, got " +
                          std::string(to_string(cfg.topology)));
    if (cfg.parameter_mode != ParameterMode::effective)
        throw DomainError("dark-mode condition needs effective-mode couplings; solve the steady state first");

    TwoModeCouplings c;
    c.omega1 = cfg.mechanicals[0].frequency;
    c.omega2 = cfg.mechanicals[1].frequency;
    for (const auto& e : config.edges()) {
        const double s = real_strength(e);
        switch (e.kind) {
            case EdgeKind::optomechanical: {
                const bool aux = e.from == 1;
                const bool second = e.to == 3;
                (aux ? (second ? c.gs2 : c.gs1) : (second ? c.g2 : c.g1)) = s;
                break;
            }
            case EdgeKind::photon_hop: c.j = s; break;
            case EdgeKind::phonon_hop: c.eta = s; break;
        }
    }
    if (c.g1 < 0.0 || c.g2 < 0.0) throw DomainError("hybrid transform is defined for nonnegative G1, G2");
    return c;
}

DarkModeReport dark_mode_condition(const TwoModeCouplings& c) {
    const auto h = hybridize(c.g1, c.g2, c.omega1, c.omega2, c.eta, c.gs1, c.gs2);
    DarkModeReport report;
    report.zeta_residual = std::abs(h.zeta);
    report.gs_minus_residual = std::abs(h.gs_minus);
    report.dark_present = report.zeta_residual < dark_mode_epsilon && report.gs_minus_residual < dark_mode_epsilon;
    if (report.zeta_residual >= dark_mode_epsilon)
        report.breaking_channels.push_back("hybrid modes coupled (zeta = " + format(h.zeta) +
                                           "): frequency mismatch or unequal G1, G2 under phonon hopping");
    if (report.gs_minus_residual >= dark_mode_epsilon)
        report.breaking_channels.push_back("dark hybrid mode coupled to the auxiliary cavity (Gs- = " +
                                           format(h.gs_minus) + "): asymmetric auxiliary coupling");
    return report;
}

DarkModeReport dark_mode_condition(const ValidatedConfig& config) {
    return dark_mode_condition(two_mode_couplings(config));
}

std::string to_string(Channel channel) {
    switch (channel) {
        case Channel::j: return "J";
        case Channel::gs1: return "Gs1";
        case Channel::gs2: return "Gs2";
        case Channel::eta: return "eta";
    }
    return "?";
}

namespace {

bool is_channel(const ResolvedEdge& e, Channel channel) {
    switch (channel) {
        case Channel::j: return e.kind == EdgeKind::photon_hop;
        case Channel::gs1: return e.kind == EdgeKind::optomechanical && e.from == 1 && e.to == 2;
        case Channel::gs2: return e.kind == EdgeKind::optomechanical && e.from == 1 && e.to == 3;
        case Channel::eta: return e.kind == EdgeKind::phonon_hop;
    }
    return false;
}

void require_network4(const ValidatedConfig& config) {
    if (config.config().topology != Topology::network4)
        throw DomainError("configuration taxonomy needs a network4 configuration, got " +
                          std::string(to_string(config.config().topology)));
}

}  // namespace

SystemConfig close_channels(const ValidatedConfig& base, const std::vector<Channel>& closed) {
    require_network4(base);
    SystemConfig cfg = base.config();
    for (const auto& e : base.edges())
        for (auto channel : closed)
            if (is_channel(e, channel)) cfg.edges[e.source].strength = 0.0;
    return cfg;
}

std::vector<ChannelConfiguration> classify_configurations(const ValidatedConfig& base) {
    require_network4(base);
    constexpr std::array<Channel, 4> channels{Channel::j, Channel::gs1, Channel::gs2, Channel::eta};
    for (auto channel : channels) {
        bool present = false;
        for (const auto& e : base.edges()) present = present || is_channel(e, channel);
        if (!present) throw DomainError("taxonomy base is missing the " + to_string(channel) + " edge");
    }

    std::vector<ChannelConfiguration> out;
    for (std::size_t size = 1; size <= 3; ++size) {
        // Lexicographic subsets of the fixed channel order.
        std::vector<std::size_t> pick(size);
        for (std::size_t i = 0; i < size; ++i) pick[i] = i;
        while (true) {
            ChannelConfiguration entry;
            for (auto i : pick) entry.closed.push_back(channels[i]);
            for (auto c : entry.closed) entry.label += to_string(c) + "=";
            entry.label += "0";
            entry.config = close_channels(base, entry.closed);
            entry.report = dark_mode_condition(validate_config(entry.config));
            out.push_back(std::move(entry));

            std::size_t i = size;
            while (i > 0 && pick[i - 1] == channels.size() - size + i - 1) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t k = i; k < size; ++k) pick[k] = pick[k - 1] + 1;
        }
    }
    return out;
}

ChainModes chain_modes(std::size_t n, double omega_m, double eta, double g, double gs) {
    if (n < 2) throw DomainError("chain normal modes need N >= 2");
    const double pi = std::numbers::pi;
    const double d = std::sqrt((static_cast<double>(n) + 1.0) / 2.0);
    const double step = pi / (static_cast<double>(n) + 1.0);

    ChainModes modes;
    modes.n = n;
    modes.transform.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t k = 1; k <= n; ++k) {
        modes.frequencies.push_back(omega_m + 2.0 * eta * std::cos(static_cast<double>(k) * step));
        double sum = 0.0;
        for (std::size_t l = 1; l <= n; ++l) {
            // sin is 2(N+1)-periodic in l*k; reduce before scaling to keep the argument small.
            const double s = std::sin(static_cast<double>((l * k) % (2 * (n + 1))) * step);
            modes.transform(static_cast<Eigen::Index>(l - 1), static_cast<Eigen::Index>(k - 1)) = s / d;
            sum += s;
        }
        modes.cavity_couplings.push_back(g * sum / d);
        modes.aux_couplings.push_back(gs * std::sin(static_cast<double>(k) * step) / d);
        // The sine sum vanishes identically for even k.
        modes.dark_to_cavity.push_back(k % 2 == 0);
    }
    return modes;
}

ChainModes chain_modes_numerical(const std::vector<double>& omegas, const std::vector<double>& hoppings,
                                 const std::vector<double>& g, double gs) {
    const std::size_t n = omegas.size();
    if (n < 2) throw DomainError("chain normal modes need N >= 2");
    if (hoppings.size() != n - 1 || g.size() != n)
        throw DomainError("chain needs N frequencies, N-1 hoppings, and N cavity couplings");

    const auto size = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(size, size);
    for (Eigen::Index l = 0; l < size; ++l) h(l, l) = omegas[static_cast<std::size_t>(l)];
    for (Eigen::Index l = 0; l + 1 < size; ++l) h(l, l + 1) = h(l + 1, l) = hoppings[static_cast<std::size_t>(l)];

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    if (solver.info() != Eigen::Success) throw SolverError("chain diagonalization failed");

    ChainModes modes;
    modes.n = n;
    modes.transform = solver.eigenvectors();
    const Eigen::Map<const Eigen::VectorXd> couplings(g.data(), size);
    double scale = 0.0;
    for (double x : g) scale = std::max(scale, std::abs(x));
    for (Eigen::Index k = 0; k < size; ++k) {
        auto column = modes.transform.col(k);
        for (Eigen::Index l = 0; l < size; ++l)
            if (std::abs(column(l)) > 1e-12) {
                if (column(l) < 0.0) column = -column;
                break;
            }
        modes.frequencies.push_back(solver.eigenvalues()(k));
        const double c = couplings.dot(column);
        modes.cavity_couplings.push_back(c);
        modes.aux_couplings.push_back(gs * column(0));
        modes.dark_to_cavity.push_back(std::abs(c) < 1e-12 * std::max(1.0, scale));
    }
    return modes;
}

ChainModes chain_modes(const ValidatedConfig& config) {
    const auto& cfg = config.config();
    if (cfg.topology != Topology::chain) throw DomainError("chain normal modes need a chain configuration");
    if (cfg.parameter_mode != ParameterMode::effective)
        throw DomainError("chain normal modes need effective-mode couplings; solve the steady state first");

    const std::size_t n = config.mechanical_count();
    std::vector<double> omegas, hoppings(n - 1, 0.0), g(n, 0.0);
    double gs = 0.0;
    for (const auto& m : cfg.mechanicals) omegas.push_back(m.frequency);
    for (const auto& e : config.edges()) {
        const double s = real_strength(e);
        if (e.kind == EdgeKind::phonon_hop) hoppings[std::min(e.from, e.to) - 2] = s;
        else if (e.kind == EdgeKind::optomechanical && e.from == 0) g[e.to - 2] = s;
        else if (e.kind == EdgeKind::optomechanical) gs = s;
    }

    auto uniform = [](const std::vector<double>& v) {
        return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
    };
    if (uniform(omegas) && uniform(hoppings) && uniform(g))
        return chain_modes(n, omegas.front(), hoppings.front(), g.front(), gs);
    return chain_modes_numerical(omegas, hoppings, g, gs);
}

}  // namespace omcool
