#include "omcool/pipeline.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "omcool/atomic.hpp"
#include "omcool/config_io.hpp"
#include "omcool/errors.hpp"

namespace omcool {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

bool has_dark_columns(const ValidatedConfig& config) {
    const auto& cfg = config.config();
    return cfg.parameter_mode == ParameterMode::effective &&
           (cfg.topology == Topology::n_type || cfg.topology == Topology::network4);
}

double parse_number(std::string_view text, std::string_view what) {
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw ParseError(ParseErrorKind::wrong_type, "grid: bad " + std::string(what) + " '" + std::string(text) + "'");
    return value;
}

}  // namespace

void GridSpec::check() const {
    if (!std::isfinite(min) || !std::isfinite(max)) throw DomainError("grid bounds must be finite");
    if (points == 0) throw DomainError("grid needs at least one point");
    if (points == 1 && min != max) throw DomainError("a one-point grid needs min == max");
    if (points >= 2 && !(min < max)) throw DomainError("grid needs min < max");
    if (log && !(min > 0.0)) throw DomainError("log grid needs min > 0");
}

std::vector<double> GridSpec::values() const {
    check();
    std::vector<double> out(points);
    if (points == 1) {
        out[0] = min;
        return out;
    }
    const double last = static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
        const double t = static_cast<double>(i) / last;
        out[i] = log ? std::exp(std::log(min) + t * (std::log(max) - std::log(min))) : min + t * (max - min);
    }
    out.front() = min;
    out.back() = max;
    return out;
}

GridSpec parse_grid(std::string_view text) {
    std::vector<std::string_view> parts;
    while (true) {
        const auto colon = text.find(':');
        parts.push_back(text.substr(0, colon));
        if (colon == std::string_view::npos) break;
        text.remove_prefix(colon + 1);
    }
    if (parts.size() != 3 && parts.size() != 4)
        throw ParseError(ParseErrorKind::syntax, "grid: expected MIN:MAX:POINTS[:log]");
    GridSpec grid;
    grid.min = parse_number(parts[0], "minimum");
    grid.max = parse_number(parts[1], "maximum");
    std::size_t points = 0;
    const auto res = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), points);
    if (parts[2].empty() || res.ec != std::errc() || res.ptr != parts[2].data() + parts[2].size())
        throw ParseError(ParseErrorKind::wrong_type, "grid: bad point count '" + std::string(parts[2]) + "'");
    grid.points = points;
    if (parts.size() == 4) {
        if (parts[3] == "log") grid.log = true;
        else if (parts[3] != "linear") throw ParseError(ParseErrorKind::wrong_type, "grid: scale must be log or linear");
    }
    return grid;
}

PointResult solve_point(const ValidatedConfig& config, const SolveOptions& options) {
    std::optional<ValidatedConfig> effective;
    if (config.config().parameter_mode == ParameterMode::physical)
        effective.emplace(validate_config(effective_config(config, solve_steady_amplitudes(config))));
    const ValidatedConfig& eff = effective ? *effective : config;

    const DriftMatrix a = build_drift_matrix(eff);
    const NoiseMatrix q = build_noise_matrix(eff);

    PointResult result;
    result.stability = stability(a);
    if (result.stability.stable) {
        LyapunovOptions lopts;
        lopts.method = options.method;
        lopts.check_stability = false;
        result.phonons = phonon_numbers(solve_lyapunov(a, q, lopts), eff).mechanical;
    }
    if (has_dark_columns(config)) {
        try {
            result.dark = dark_mode_condition(eff);
        } catch (const DomainError&) {
            // Hybrid modes undefined (G1 = G2 = 0 or negative G): no report.
        }
    }
    return result;
}

std::vector<std::string> output_columns(const ValidatedConfig& config) {
    std::vector<std::string> cols;
    for (std::size_t l = 1; l <= config.mechanical_count(); ++l) cols.push_back("n_f_" + std::to_string(l));
    cols.emplace_back("stable");
    if (has_dark_columns(config)) {
        cols.emplace_back("dark");
        cols.emplace_back("zeta_residual");
        cols.emplace_back("gs_minus_residual");
    }
    return cols;
}

std::vector<Cell> output_cells(const ValidatedConfig& config, const PointResult& result) {
    std::vector<Cell> cells;
    for (std::size_t l = 0; l < config.mechanical_count(); ++l)
        cells.emplace_back(l < result.phonons.size() ? result.phonons[l] : nan);
    cells.emplace_back(result.stability.stable ? 1.0 : 0.0);
    if (has_dark_columns(config)) {
        if (result.dark) {
            cells.emplace_back(result.dark->dark_present ? 1.0 : 0.0);
            cells.emplace_back(result.dark->zeta_residual);
            cells.emplace_back(result.dark->gs_minus_residual);
        } else {
            cells.emplace_back(0.0);
            cells.emplace_back(nan);
            cells.emplace_back(nan);
        }
    }
    return cells;
}

double single_resonator_reference(double detuning, double decay, double frequency, double damping,
                                  double thermal_occupation, double coupling) {
    SystemConfig cfg;
    cfg.cavities = {{"a", detuning, decay, 0.0}};
    cfg.mechanicals = {{"b", frequency, damping, thermal_occupation}};
    cfg.edges = {{EdgeKind::optomechanical, "a", "b", coupling}};
    const auto result = solve_point(validate_config(std::move(cfg)));
    if (!result.stability.stable) throw UnstableSystemError("single-resonator reference system is unstable");
    return result.phonons.front();
}

ResultTable run_solve(const ValidatedConfig& config, const SolveOptions& options) {
    ResultTable table;
    table.set_metadata("tool_version", tool_version);
    table.set_metadata("config_hash", config_hash_hex(config.config()));
    table.set_metadata("axes", "0");
    table.columns = output_columns(config);
    table.rows.push_back(output_cells(config, solve_point(config, options)));
    return table;
}

ResultTable run_taxonomy(const ValidatedConfig& base, const std::optional<GridSpec>& kappa,
                         const SolveOptions& options) {
    if (base.config().parameter_mode != ParameterMode::effective)
        throw DomainError("taxonomy needs an effective-mode configuration");
    const auto configurations = classify_configurations(base);

    ResultTable table;
    table.set_metadata("tool_version", tool_version);
    table.set_metadata("config_hash", config_hash_hex(base.config()));
    table.set_metadata("axes", kappa ? "1" : "0");
    table.columns = {"config"};
    if (kappa) table.columns.emplace_back("kappa");
    for (const char* c : {"dark", "zeta_residual", "gs_minus_residual", "stable", "n_f_1", "n_f_2"})
        table.columns.emplace_back(c);
    table.axis_count = kappa ? 1 : 0;

    const std::vector<double> kappas = kappa ? kappa->values() : std::vector<double>{base.config().cavities[0].decay};
    for (const auto& entry : configurations) {
        for (double k : kappas) {
            SystemConfig cfg = entry.config;
            cfg.cavities[0].decay = k;
            const auto result = solve_point(validate_config(cfg), options);
            std::vector<Cell> row{entry.label};
            if (kappa) row.emplace_back(k);
            row.emplace_back(entry.report.dark_present ? 1.0 : 0.0);
            row.emplace_back(entry.report.zeta_residual);
            row.emplace_back(entry.report.gs_minus_residual);
            row.emplace_back(result.stability.stable ? 1.0 : 0.0);
            for (std::size_t l = 0; l < 2; ++l) row.emplace_back(l < result.phonons.size() ? result.phonons[l] : nan);
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

ResultTable run_atomic(int levels, const GridSpec& ratio) {
    if (levels != 3 && levels != 4) throw DomainError("atomic scan needs 3 or 4 levels");
    ResultTable table;
    table.set_metadata("tool_version", tool_version);
    table.set_metadata("levels", std::to_string(levels));
    table.set_metadata("axes", "1");
    table.axis_count = 1;
    table.columns = {"ratio"};
    for (int s = 1; s <= levels; ++s) table.columns.push_back("lambda_" + std::to_string(s));
    for (int s = 1; s <= levels; ++s) table.columns.push_back("p_e_" + std::to_string(s));

    for (double xi : ratio.values()) {
        const auto report = levels == 3 ? three_level_eigensystem(xi, 1.0) : four_level_eigensystem(xi, 1.0);
        std::vector<Cell> row{xi};
        for (double v : report.eigenvalues) row.emplace_back(v);
        for (double p : report.excited_probabilities) row.emplace_back(p);
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace omcool
