#include "omcool/presets.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "omcool/config_io.hpp"
#include "omcool/errors.hpp"

namespace omcool {

namespace {

// Shared values of every optomechanical figure, in units of omega_1.
constexpr double gamma_m = 1e-5;
constexpr double n_thermal = 1000.0;
constexpr double g_intermediate = 0.05;

struct TwoModeParams {
    double delta_c = 1.0, kappa = 0.1;
    double delta_s = 1.0, kappa_s = 0.1;
    double omega2 = 1.0;
    double g1 = g_intermediate, g2 = g_intermediate;
    double gs1 = 0.08, gs2 = 0.08;
    double j = 0.03, eta = 0.03;
};

SystemConfig two_cavity_base(const TwoModeParams& p) {
    SystemConfig cfg;
    cfg.parameter_mode = ParameterMode::effective;
    cfg.cavities = {{"a", p.delta_c, p.kappa, 0.0}, {"as", p.delta_s, p.kappa_s, 0.0}};
    cfg.mechanicals = {{"b1", 1.0, gamma_m, n_thermal}, {"b2", p.omega2, gamma_m, n_thermal}};
    cfg.edges = {{EdgeKind::optomechanical, "a", "b1", p.g1},
                 {EdgeKind::optomechanical, "a", "b2", p.g2},
                 {EdgeKind::optomechanical, "as", "b1", p.gs1}};
    return cfg;
}

SystemConfig n_type(const TwoModeParams& p) {
    SystemConfig cfg = two_cavity_base(p);
    cfg.topology = Topology::n_type;
    return cfg;
}

SystemConfig network4(const TwoModeParams& p) {
    SystemConfig cfg = two_cavity_base(p);
    cfg.topology = Topology::network4;
    cfg.edges.push_back({EdgeKind::optomechanical, "as", "b2", p.gs2});
    cfg.edges.push_back({EdgeKind::photon_hop, "a", "as", p.j});
    cfg.edges.push_back({EdgeKind::phonon_hop, "b1", "b2", p.eta});
    return cfg;
}

SystemConfig chain(std::size_t n, double gs, double eta) {
    SystemConfig cfg;
    cfg.parameter_mode = ParameterMode::effective;
    cfg.topology = Topology::chain;
    cfg.cavities = {{"a", 1.0, 0.1, 0.0}, {"as", 1.0, 0.1, 0.0}};
    for (std::size_t l = 1; l <= n; ++l) {
        const std::string id = "b" + std::to_string(l);
        cfg.mechanicals.push_back({id, 1.0, gamma_m, n_thermal});
        cfg.edges.push_back({EdgeKind::optomechanical, "a", id, g_intermediate});
    }
    cfg.edges.push_back({EdgeKind::optomechanical, "as", "b1", gs});
    for (std::size_t l = 1; l < n; ++l)
        cfg.edges.push_back({EdgeKind::phonon_hop, "b" + std::to_string(l), "b" + std::to_string(l + 1), eta});
    return cfg;
}

Preset start(std::string name, PresetKind kind, std::string plot_column) {
    Preset p;
    p.name = std::move(name);
    p.kind = kind;
    p.plot_column = std::move(plot_column);
    return p;
}

SweepAxis axis(std::string path, double min, double max, std::size_t points) {
    return {std::move(path), GridSpec{min, max, points, false}};
}

// Decay-rate axis shared by the one-dimensional kappa scans.
constexpr double kappa_min = 0.05, kappa_max = 1.0;

Preset fig2(bool detuning_of_intermediate, std::string name, std::string column, std::size_t points) {
    Preset p = start(std::move(name), PresetKind::sweep, std::move(column));
    const std::string cavity = detuning_of_intermediate ? "a" : "as";
    p.description = "phonon numbers over the " + cavity + " detuning and decay plane, dark mode broken by Gs1";
    p.cases.push_back({"", n_type({}),
                       {axis("cavities." + cavity + ".detuning", 0.5, 1.5, points),
                        axis("cavities." + cavity + ".decay", kappa_min, kappa_max, points)}});
    return p;
}

Preset fig3(bool broken, std::string name, std::string column, std::size_t points) {
    Preset p = start(std::move(name), PresetKind::sweep, std::move(column));
    p.description = broken ? "phonon numbers over omega2 and kappa with Gs1 = 0.08 (dark mode broken)"
                           : "phonon numbers over omega2 and kappa with Gs1 = 0 (dark mode intact)";
    TwoModeParams params;
    params.gs1 = broken ? 0.08 : 0.0;
    p.cases.push_back({"", n_type(params),
                       {axis("mechanicals.b2.frequency", 0.9, 1.1, points),
                        axis("cavities.a.decay", kappa_min, kappa_max, points)}});
    return p;
}

Preset fig4(std::string name, std::string column, std::size_t points) {
    Preset p = start(std::move(name), PresetKind::sweep, std::move(column));
    p.description = "phonon numbers versus Gs1 for kappa_s = 0.4, 0.8, 1.2";
    for (double ks : {0.4, 0.8, 1.2}) {
        TwoModeParams params;
        params.kappa_s = ks;
        p.cases.push_back({"kappa_s=" + format_double(ks), n_type(params), {axis("edges.as-b1.strength", 0.0, 0.3, points)}});
    }
    return p;
}

Preset fig7(std::size_t closed, std::string name, std::string column, std::size_t points) {
    Preset p = start(std::move(name), PresetKind::taxonomy, std::move(column));
    p.closed_channels = closed;
    p.description = "phonon numbers versus kappa for every configuration with " + std::to_string(closed) +
                    " closed channel(s)";
    p.cases.push_back({"", network4({}), {axis("cavities.a.decay", kappa_min, kappa_max, points)}});
    return p;
}

Preset fig8a(std::size_t points) {
    Preset p = start("fig8a", PresetKind::sweep, "n_f_1");
    p.description = "phonon numbers versus kappa for Gs2 = 4 Gs1 = 0.08 and the swapped couplings";
    TwoModeParams weak1;
    weak1.gs1 = 0.02;
    weak1.gs2 = 0.08;
    TwoModeParams weak2;
    weak2.gs1 = 0.08;
    weak2.gs2 = 0.02;
    p.cases.push_back({"Gs2=4Gs1", network4(weak1), {axis("cavities.a.decay", kappa_min, kappa_max, points)}});
    p.cases.push_back({"Gs1=4Gs2", network4(weak2), {axis("cavities.a.decay", kappa_min, kappa_max, points)}});
    return p;
}

Preset fig8b(std::size_t points) {
    Preset p = start("fig8b", PresetKind::sweep, "n_f_1");
    p.description = "phonon numbers versus Gs2 (ratio Gs2/Gs1 from 0 to 2) with Gs1 = 0.08";
    p.cases.push_back({"", network4({}), {axis("edges.as-b2.strength", 0.0, 0.16, points)}});
    return p;
}

Preset fig11(std::size_t n, bool detuning_axis, std::string name, std::size_t points) {
    Preset p = start(std::move(name), PresetKind::sweep, "n_f_1");
    p.description = "chain of " + std::to_string(n) + " resonators, phonon numbers versus " +
                    (detuning_axis ? "the intermediate detuning" : "kappa") + ", dark modes broken and intact";
    const auto ax = detuning_axis ? axis("cavities.a.detuning", 0.5, 1.5, points)
                                  : axis("cavities.a.decay", kappa_min, kappa_max, points);
    p.cases.push_back({"broken", chain(n, 0.1, 0.06), {ax}});
    p.cases.push_back({"unbroken", chain(n, 0.0, 0.0), {ax}});
    return p;
}

Preset fig13(int levels, std::string name, std::size_t points) {
    Preset p = start(std::move(name), PresetKind::atomic, "p_e_1");
    p.levels = levels;
    p.ratio = GridSpec{0.0, 3.0, points, false};
    p.description = levels == 3 ? "three-level atom: eigenvalues and excited-state weights versus Omega1/Omega2"
                                : "four-level atom: eigenvalues and excited-state weights versus Omega3/Omega'";
    return p;
}

Preset table1() {
    Preset p = start("table1", PresetKind::solve, "n_f_1");
    p.description = "network-coupled system at the scaled experimental parameter set";
    p.cases.push_back({"", network4({}), {}});
    return p;
}

using Builder = std::function<Preset(std::size_t)>;

const std::vector<std::pair<std::string, Builder>>& registry() {
    static const std::vector<std::pair<std::string, Builder>> presets = {
        {"fig2a", [](std::size_t n) { return fig2(true, "fig2a", "n_f_1", n); }},
        {"fig2b", [](std::size_t n) { return fig2(true, "fig2b", "n_f_2", n); }},
        {"fig2c", [](std::size_t n) { return fig2(false, "fig2c", "n_f_1", n); }},
        {"fig2d", [](std::size_t n) { return fig2(false, "fig2d", "n_f_2", n); }},
        {"fig3a", [](std::size_t n) { return fig3(false, "fig3a", "n_f_1", n); }},
        {"fig3b", [](std::size_t n) { return fig3(false, "fig3b", "n_f_2", n); }},
        {"fig3c", [](std::size_t n) { return fig3(true, "fig3c", "n_f_1", n); }},
        {"fig3d", [](std::size_t n) { return fig3(true, "fig3d", "n_f_2", n); }},
        {"fig4a", [](std::size_t n) { return fig4("fig4a", "n_f_1", n); }},
        {"fig4b", [](std::size_t n) { return fig4("fig4b", "n_f_2", n); }},
        {"fig7a", [](std::size_t n) { return fig7(1, "fig7a", "n_f_1", n); }},
        {"fig7b", [](std::size_t n) { return fig7(1, "fig7b", "n_f_2", n); }},
        {"fig7c", [](std::size_t n) { return fig7(2, "fig7c", "n_f_1", n); }},
        {"fig7d", [](std::size_t n) { return fig7(2, "fig7d", "n_f_2", n); }},
        {"fig7e", [](std::size_t n) { return fig7(3, "fig7e", "n_f_1", n); }},
        {"fig7f", [](std::size_t n) { return fig7(3, "fig7f", "n_f_2", n); }},
        {"fig8a", [](std::size_t n) { return fig8a(n); }},
        {"fig8b", [](std::size_t n) { return fig8b(n); }},
        {"fig11a", [](std::size_t n) { return fig11(3, true, "fig11a", n); }},
        {"fig11b", [](std::size_t n) { return fig11(4, true, "fig11b", n); }},
        {"fig11c", [](std::size_t n) { return fig11(3, false, "fig11c", n); }},
        {"fig11d", [](std::size_t n) { return fig11(4, false, "fig11d", n); }},
        {"fig13a", [](std::size_t n) { return fig13(3, "fig13a", n); }},
        {"fig13b", [](std::size_t n) { return fig13(4, "fig13b", n); }},
        {"table1", [](std::size_t) { return table1(); }},
    };
    return presets;
}

std::size_t closed_count(const std::string& label) {
    return static_cast<std::size_t>(std::count(label.begin(), label.end(), '='));
}

void prepend_case(ResultTable& table, const std::string& label) {
    table.columns.insert(table.columns.begin(), "case");
    for (auto& row : table.rows) row.insert(row.begin(), label);
}

SweepResult run_case(const Preset& preset, const PresetCase& c, int jobs, const SolveOptions& options) {
    switch (preset.kind) {
        case PresetKind::sweep: return run_sweep(SweepSpec{c.config, c.axes, {}}, jobs, options);
        case PresetKind::solve: {
            SweepResult r;
            r.total_points = 1;
            r.table = run_solve(validate_config(c.config), options);
            return r;
        }
        case PresetKind::taxonomy: {
            SweepResult r;
            r.table = run_taxonomy(validate_config(c.config), c.axes.front().grid, options);
            if (preset.closed_channels != 0)
                std::erase_if(r.table.rows, [&](const std::vector<Cell>& row) {
                    return closed_count(std::get<std::string>(row.front())) != preset.closed_channels;
                });
            r.total_points = r.table.rows.size();
            return r;
        }
        case PresetKind::atomic: break;
    }
    throw DomainError("preset case has no runnable kind");
}

}  // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, _] : registry()) out.push_back(name);
        return out;
    }();
    return names;
}

Preset make_preset(std::string_view name, std::size_t points) {
    if (points < 2) throw DomainError("presets need at least 2 points per axis");
    for (const auto& [n, build] : registry())
        if (n == name) return build(points);
    throw DomainError("unknown preset '" + std::string(name) + "'");
}

const PresetCase& preset_case(const Preset& preset, std::string_view label) {
    if (preset.cases.empty()) throw DomainError("preset '" + preset.name + "' has no configuration");
    if (label.empty()) return preset.cases.front();
    for (const auto& c : preset.cases)
        if (c.label == label) return c;
    throw DomainError("preset '" + preset.name + "' has no case '" + std::string(label) + "'");
}

SweepResult run_preset(const Preset& preset, int jobs, const SolveOptions& options) {
    SweepResult out;
    if (preset.kind == PresetKind::atomic) {
        out.table = run_atomic(preset.levels, preset.ratio);
        out.total_points = out.table.rows.size();
    } else {
        std::string hashes;
        for (std::size_t i = 0; i < preset.cases.size(); ++i) {
            const auto& c = preset.cases[i];
            SweepResult part;
            try {
                part = run_case(preset, c, jobs, options);
            } catch (...) {
                part.failure = std::current_exception();
            }
            if (preset.cases.size() > 1) prepend_case(part.table, c.label);
            hashes += (i ? "+" : "") + config_hash_hex(c.config);
            if (i == 0) {
                out.table.columns = part.table.columns;
                out.table.axis_count = part.table.axis_count;
                out.table.metadata = part.table.metadata;
            }
            for (auto& row : part.table.rows) out.table.rows.push_back(std::move(row));
            if (part.failure) {
                out.failure = part.failure;
                out.failed_index = out.total_points + part.failed_index;
                out.total_points += part.total_points;
                out.table.set_metadata("status", "partial: case '" + c.label + "' failed");
                break;
            }
            out.total_points += part.total_points;
        }
        out.table.set_metadata("config_hash", hashes);
    }
    out.table.set_metadata("preset", preset.name);
    out.table.set_metadata("plot_column", preset.plot_column);
    return out;
}

}  // namespace omcool
