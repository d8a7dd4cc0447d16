#include "omcool/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>
#include <unordered_map>
#include <utility>

#include "omcool/errors.hpp"

namespace omcool {

namespace {

constexpr Complex I{0.0, 1.0};

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require(bool condition, ConfigErrorKind kind, const std::string& message) {
    if (!condition) throw ConfigError(kind, message);
}

bool fits_n_type(std::size_t cavities, std::size_t mechanicals, const std::vector<ResolvedEdge>& edges) {
    if (cavities != 2 || mechanicals != 2) return false;
    // a -> b1, a -> b2, a_s -> b1 only.
    return std::all_of(edges.begin(), edges.end(), [](const ResolvedEdge& e) {
        if (e.kind != EdgeKind::optomechanical) return false;
        return !(e.from == 1 && e.to == 3);
    });
}

bool fits_chain(std::size_t cavities, std::size_t mechanicals, const std::vector<ResolvedEdge>& edges) {
    if (cavities != 2 || mechanicals < 2) return false;
    return std::all_of(edges.begin(), edges.end(), [](const ResolvedEdge& e) {
        switch (e.kind) {
            case EdgeKind::optomechanical: return e.from == 0 || e.to == 2;
            case EdgeKind::photon_hop: return false;
            case EdgeKind::phonon_hop: return std::max(e.from, e.to) - std::min(e.from, e.to) == 1;
        }
        return false;
    });
}

bool fits(Topology topology, std::size_t cavities, std::size_t mechanicals,
          const std::vector<ResolvedEdge>& edges) {
    switch (topology) {
        case Topology::n_type: return fits_n_type(cavities, mechanicals, edges);
        case Topology::network4: return cavities == 2 && mechanicals == 2;
        case Topology::chain: return fits_chain(cavities, mechanicals, edges);
        case Topology::generic: return true;
    }
    return false;
}

std::vector<ResolvedEdge> resolve_edges(const SystemConfig& config) {
    std::unordered_map<std::string, std::size_t> index;
    const std::size_t cavities = config.cavities.size();
    for (std::size_t c = 0; c < cavities; ++c) {
        const auto& id = config.cavities[c].id;
        require(!id.empty(), ConfigErrorKind::invalid_value, "cavity " + std::to_string(c) + " has an empty id");
        require(index.emplace(id, c).second, ConfigErrorKind::duplicate_id, "duplicate mode id '" + id + "'");
    }
    for (std::size_t l = 0; l < config.mechanicals.size(); ++l) {
        const auto& id = config.mechanicals[l].id;
        require(!id.empty(), ConfigErrorKind::invalid_value,
                "mechanical mode " + std::to_string(l) + " has an empty id");
        require(index.emplace(id, cavities + l).second, ConfigErrorKind::duplicate_id,
                "duplicate mode id '" + id + "'");
    }

    std::vector<ResolvedEdge> resolved;
    std::set<std::tuple<EdgeKind, std::size_t, std::size_t>> seen;
    for (std::size_t k = 0; k < config.edges.size(); ++k) {
        const auto& edge = config.edges[k];
        const std::string label = "edge " + std::to_string(k) + " (" + edge.from + " -> " + edge.to + ")";
        auto from = index.find(edge.from);
        auto to = index.find(edge.to);
        require(from != index.end(), ConfigErrorKind::dangling_endpoint,
                label + ": unknown endpoint '" + edge.from + "'");
        require(to != index.end(), ConfigErrorKind::dangling_endpoint, label + ": unknown endpoint '" + edge.to + "'");
        require(from->second != to->second, ConfigErrorKind::self_loop, label + ": self loop");
        require(finite(edge.strength), ConfigErrorKind::invalid_value, label + ": non-finite strength");

        const bool from_cavity = from->second < cavities;
        const bool to_cavity = to->second < cavities;
        bool ok = false;
        switch (edge.kind) {
            case EdgeKind::optomechanical: ok = from_cavity && !to_cavity; break;
            case EdgeKind::photon_hop: ok = from_cavity && to_cavity; break;
            case EdgeKind::phonon_hop: ok = !from_cavity && !to_cavity; break;
        }
        require(ok, ConfigErrorKind::kind_mismatch,
                label + ": endpoints do not match kind " + std::string(to_string(edge.kind)));

        const auto key = std::make_tuple(edge.kind, std::min(from->second, to->second),
                                         std::max(from->second, to->second));
        require(seen.insert(key).second, ConfigErrorKind::duplicate_edge,
                label + ": duplicate " + std::string(to_string(edge.kind)) + " edge");
        resolved.push_back({edge.kind, from->second, to->second, edge.strength, k});
    }
    return resolved;
}

}  // namespace

std::string_view to_string(ParameterMode mode) {
    return mode == ParameterMode::effective ? "effective" : "physical";
}

std::string_view to_string(Topology topology) {
    switch (topology) {
        case Topology::n_type: return "n_type";
        case Topology::network4: return "network4";
        case Topology::chain: return "chain";
        case Topology::generic: return "generic";
    }
    return "generic";
}

std::string_view to_string(EdgeKind kind) {
    switch (kind) {
        case EdgeKind::optomechanical: return "optomechanical";
        case EdgeKind::photon_hop: return "photon_hop";
        case EdgeKind::phonon_hop: return "phonon_hop";
    }
    return "optomechanical";
}

std::optional<ParameterMode> parse_parameter_mode(std::string_view text) {
    if (text == "effective") return ParameterMode::effective;
    if (text == "physical") return ParameterMode::physical;
    return std::nullopt;
}

std::optional<Topology> parse_topology(std::string_view text) {
    for (auto t : {Topology::n_type, Topology::network4, Topology::chain, Topology::generic})
        if (text == to_string(t)) return t;
    return std::nullopt;
}

std::optional<EdgeKind> parse_edge_kind(std::string_view text) {
    for (auto k : {EdgeKind::optomechanical, EdgeKind::photon_hop, EdgeKind::phonon_hop})
        if (text == to_string(k)) return k;
    return std::nullopt;
}

std::optional<std::size_t> ValidatedConfig::index_of(std::string_view id) const {
    for (std::size_t c = 0; c < config_.cavities.size(); ++c)
        if (config_.cavities[c].id == id) return c;
    for (std::size_t l = 0; l < config_.mechanicals.size(); ++l)
        if (config_.mechanicals[l].id == id) return cavity_count() + l;
    return std::nullopt;
}

ValidatedConfig validate_config(SystemConfig config) {
    require(!config.cavities.empty(), ConfigErrorKind::empty_mode_list, "configuration has no cavity modes");
    require(!config.mechanicals.empty(), ConfigErrorKind::empty_mode_list, "configuration has no mechanical modes");

    for (const auto& c : config.cavities) {
        require(std::isfinite(c.detuning) && std::isfinite(c.decay) && finite(c.drive),
                ConfigErrorKind::invalid_value, "cavity '" + c.id + "' has a non-finite parameter");
        require(c.decay >= 0.0, ConfigErrorKind::invalid_value, "cavity '" + c.id + "' has negative decay");
    }
    for (const auto& m : config.mechanicals) {
        require(std::isfinite(m.frequency) && std::isfinite(m.damping) && std::isfinite(m.thermal_occupation),
                ConfigErrorKind::invalid_value, "mechanical mode '" + m.id + "' has a non-finite parameter");
        require(m.frequency > 0.0, ConfigErrorKind::invalid_value,
                "mechanical mode '" + m.id + "' needs a positive frequency");
        require(m.damping >= 0.0, ConfigErrorKind::invalid_value,
                "mechanical mode '" + m.id + "' has negative damping");
        require(m.thermal_occupation >= 0.0, ConfigErrorKind::invalid_value,
                "mechanical mode '" + m.id + "' has negative thermal occupation");
    }

    auto edges = resolve_edges(config);
    require(fits(config.topology, config.cavities.size(), config.mechanicals.size(), edges),
            ConfigErrorKind::topology_mismatch,
            "mode graph does not have the shape of topology " + std::string(to_string(config.topology)));
    return ValidatedConfig(std::move(config), std::move(edges));
}

Topology infer_topology(const SystemConfig& config) {
    auto validated = validate_config([&] {
        auto copy = config;
        copy.topology = Topology::generic;
        return copy;
    }());
    const auto c = validated.cavity_count();
    const auto m = validated.mechanical_count();
    for (auto t : {Topology::n_type, Topology::network4, Topology::chain})
        if (fits(t, c, m, validated.edges())) return t;
    return Topology::generic;
}

Eigen::MatrixXcd DriftMatrix::upper_left() const {
    const auto m = static_cast<Eigen::Index>(mode_count());
    return entries.topLeftCorner(m, m);
}

Eigen::MatrixXcd DriftMatrix::upper_right() const {
    const auto m = static_cast<Eigen::Index>(mode_count());
    return entries.topRightCorner(m, m);
}

namespace {

// E and F blocks from per-cavity detunings and per-edge strengths.
DriftMatrix assemble(const ValidatedConfig& config, const std::vector<double>& detunings,
                     const std::vector<Complex>& strengths) {
    const auto& cfg = config.config();
    const auto m = static_cast<Eigen::Index>(config.mode_count());
    const auto cavities = config.cavity_count();

    Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(m, m);
    Eigen::MatrixXcd f = Eigen::MatrixXcd::Zero(m, m);
    for (std::size_t c = 0; c < cavities; ++c)
        e(c, c) = -(cfg.cavities[c].decay + I * detunings[c]);
    for (std::size_t l = 0; l < config.mechanical_count(); ++l) {
        const auto& mech = cfg.mechanicals[l];
        e(cavities + l, cavities + l) = -(mech.damping + I * mech.frequency);
    }

    for (const auto& edge : config.edges()) {
        const Complex s = strengths[edge.source];
        const auto i = static_cast<Eigen::Index>(edge.from);
        const auto j = static_cast<Eigen::Index>(edge.to);
        if (edge.kind == EdgeKind::optomechanical) {
            // d(da)/dt ∋ -iG (db + db†);  d(db)/dt ∋ -iG* da - iG da†
            e(i, j) += -I * s;
            e(j, i) += -I * std::conj(s);
            f(i, j) += -I * s;
            f(j, i) += -I * s;
        } else {
            e(i, j) += -I * s;
            e(j, i) += -I * std::conj(s);
        }
    }

    DriftMatrix a;
    a.entries.resize(2 * m, 2 * m);
    a.entries.topLeftCorner(m, m) = e;
    a.entries.topRightCorner(m, m) = f;
    a.entries.bottomLeftCorner(m, m) = f.conjugate();
    a.entries.bottomRightCorner(m, m) = e.conjugate();
    return a;
}

}  // namespace

DriftMatrix build_drift_matrix(const ValidatedConfig& config) {
    const auto& cfg = config.config();
    if (cfg.parameter_mode != ParameterMode::effective)
        throw ConfigError(ConfigErrorKind::invalid_value,
                          "physical-mode configuration needs solved steady amplitudes to build the drift matrix");
    std::vector<double> detunings;
    detunings.reserve(cfg.cavities.size());
    for (const auto& c : cfg.cavities) detunings.push_back(c.detuning);
    std::vector<Complex> strengths;
    strengths.reserve(cfg.edges.size());
    for (const auto& e : cfg.edges) strengths.push_back(e.strength);
    return assemble(config, detunings, strengths);
}

DriftMatrix build_drift_matrix(const ValidatedConfig& config, const SteadyAmplitudes& amplitudes) {
    const auto& cfg = config.config();
    if (amplitudes.effective_detunings.size() != cfg.cavities.size() ||
        amplitudes.linearized_couplings.size() != amplitudes.coupling_edges.size())
        throw ConfigError(ConfigErrorKind::invalid_value, "steady amplitudes do not match the configuration");
    std::vector<Complex> strengths;
    strengths.reserve(cfg.edges.size());
    for (const auto& e : cfg.edges) strengths.push_back(e.strength);
    for (std::size_t k = 0; k < amplitudes.coupling_edges.size(); ++k)
        strengths.at(amplitudes.coupling_edges[k]) = amplitudes.linearized_couplings[k];
    return assemble(config, amplitudes.effective_detunings, strengths);
}

NoiseMatrix build_noise_matrix(const ValidatedConfig& config) {
    const auto& cfg = config.config();
    const auto m = static_cast<Eigen::Index>(config.mode_count());
    const auto cavities = static_cast<Eigen::Index>(config.cavity_count());

    // <N_k N_l> = C_kl: vacuum input for cavities, thermal for mechanics.
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(2 * m, 2 * m);
    for (Eigen::Index k = 0; k < cavities; ++k)
        c(k, m + k) = 2.0 * cfg.cavities[static_cast<std::size_t>(k)].decay;
    for (Eigen::Index l = 0; l < m - cavities; ++l) {
        const auto& mech = cfg.mechanicals[static_cast<std::size_t>(l)];
        const auto row = cavities + l;
        c(row, m + row) = 2.0 * mech.damping * (mech.thermal_occupation + 1.0);
        c(m + row, row) = 2.0 * mech.damping * mech.thermal_occupation;
    }

    NoiseMatrix q;
    q.entries = 0.5 * (c + c.transpose());
    return q;
}

}  // namespace omcool
