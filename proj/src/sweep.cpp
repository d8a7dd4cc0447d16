#include "omcool/sweep.hpp"

#include <charconv>
#include <cstdlib>
#include <optional>

#include <omp.h>

#include "omcool/config_io.hpp"
#include "omcool/errors.hpp"

namespace omcool {

namespace {

std::optional<std::size_t> parse_index(std::string_view text) {
    std::size_t value = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size()) return std::nullopt;
    return value;
}

template <class Modes>
auto& select_mode(Modes& modes, std::string_view selector, std::string_view path) {
    for (auto& m : modes)
        if (m.id == selector) return m;
    if (auto i = parse_index(selector); i && *i < modes.size()) return modes[*i];
    throw DomainError("parameter path '" + std::string(path) + "': no mode '" + std::string(selector) + "'");
}

std::vector<CouplingEdge*> select_edges(SystemConfig& config, std::string_view selector, std::string_view path) {
    std::vector<CouplingEdge*> out;
    if (auto kind = parse_edge_kind(selector)) {
        for (auto& e : config.edges)
            if (e.kind == *kind) out.push_back(&e);
    } else if (auto i = parse_index(selector)) {
        if (*i < config.edges.size()) out.push_back(&config.edges[*i]);
    } else {
        // Ids may contain '-', so try every split point.
        for (std::size_t dash = selector.find('-'); dash != std::string_view::npos; dash = selector.find('-', dash + 1)) {
            const auto a = selector.substr(0, dash);
            const auto b = selector.substr(dash + 1);
            for (auto& e : config.edges)
                if ((e.from == a && e.to == b) || (e.from == b && e.to == a)) out.push_back(&e);
            if (!out.empty()) break;
        }
    }
    if (out.empty())
        throw DomainError("parameter path '" + std::string(path) + "': no edge matches '" + std::string(selector) + "'");
    return out;
}

// Grid point i in row-major order.
std::vector<double> point_coordinates(const std::vector<std::vector<double>>& grids, std::size_t i) {
    std::vector<double> coords(grids.size());
    for (std::size_t a = grids.size(); a-- > 0;) {
        coords[a] = grids[a][i % grids[a].size()];
        i /= grids[a].size();
    }
    return coords;
}

struct Prepared {
    std::vector<std::vector<double>> grids;
    std::size_t total = 1;
    std::vector<std::string> all_columns;
    std::vector<std::size_t> kept;
};

Prepared prepare(const SweepSpec& spec) {
    check_sweep(spec);
    Prepared p;
    for (const auto& axis : spec.axes) {
        p.grids.push_back(axis.grid.values());
        p.total *= p.grids.back().size();
    }
    p.all_columns = output_columns(validate_config(spec.base));
    for (std::size_t c = 0; c < p.all_columns.size(); ++c) {
        const auto& name = p.all_columns[c];
        const bool keep = name.starts_with("n_f_") ? spec.outputs.phonons
                          : name == "stable"       ? spec.outputs.stability
                                                   : spec.outputs.dark;
        if (keep) p.kept.push_back(c);
    }
    return p;
}

std::vector<Cell> compute_row(const SweepSpec& spec, const Prepared& p, std::size_t index,
                              const SolveOptions& options) {
    const auto coords = point_coordinates(p.grids, index);
    SystemConfig cfg = spec.base;
    for (std::size_t a = 0; a < coords.size(); ++a) set_parameter(cfg, spec.axes[a].path, coords[a]);
    const auto config = validate_config(std::move(cfg));
    const auto cells = output_cells(config, solve_point(config, options));

    std::vector<Cell> row(coords.begin(), coords.end());
    for (auto c : p.kept) row.push_back(cells[c]);
    return row;
}

SweepResult assemble(const SweepSpec& spec, const Prepared& p, std::vector<std::vector<Cell>>&& rows,
                     std::vector<std::exception_ptr>&& errors) {
    SweepResult result;
    result.total_points = p.total;
    auto& table = result.table;
    table.set_metadata("tool_version", tool_version);
    table.set_metadata("config_hash", config_hash_hex(spec.base));
    table.set_metadata("axes", std::to_string(spec.axes.size()));
    table.axis_count = spec.axes.size();
    for (const auto& axis : spec.axes) table.columns.push_back(axis.path);
    for (auto c : p.kept) table.columns.push_back(p.all_columns[c]);

    std::size_t end = p.total;
    for (std::size_t i = 0; i < p.total; ++i)
        if (errors[i]) {
            end = i;
            result.failure = errors[i];
            result.failed_index = i;
            table.set_metadata("status", "partial: failed at point " + std::to_string(i) + " of " +
                                             std::to_string(p.total));
            break;
        }
    rows.resize(end);
    table.rows = std::move(rows);
    return result;
}

}  // namespace

SweepAxis parse_axis(std::string_view text) {
    // PATH never contains ':', so the grid is everything after the first one.
    const auto colon = text.find(':');
    if (colon == std::string_view::npos || colon == 0)
        throw ParseError(ParseErrorKind::syntax, "axis: expected PATH:MIN:MAX:POINTS[:log], got '" + std::string(text) + "'");
    return {std::string(text.substr(0, colon)), parse_grid(text.substr(colon + 1))};
}

void set_parameter(SystemConfig& config, std::string_view path, double value) {
    const auto first = path.find('.');
    const auto last = path.rfind('.');
    if (first == std::string_view::npos || first == last)
        throw DomainError("parameter path '" + std::string(path) + "' must look like group.selector.field");
    const auto group = path.substr(0, first);
    const auto selector = path.substr(first + 1, last - first - 1);
    const auto field = path.substr(last + 1);

    if (group == "cavities") {
        auto& c = select_mode(config.cavities, selector, path);
        if (field == "detuning") c.detuning = value;
        else if (field == "decay") c.decay = value;
        else if (field == "drive") c.drive = value;
        else throw DomainError("parameter path '" + std::string(path) + "': unknown cavity field");
    } else if (group == "mechanicals") {
        auto& m = select_mode(config.mechanicals, selector, path);
        if (field == "frequency") m.frequency = value;
        else if (field == "damping") m.damping = value;
        else if (field == "thermal_occupation") m.thermal_occupation = value;
        else throw DomainError("parameter path '" + std::string(path) + "': unknown mechanical field");
    } else if (group == "edges") {
        if (field != "strength") throw DomainError("parameter path '" + std::string(path) + "': edges only have strength");
        for (auto* e : select_edges(config, selector, path)) e->strength = value;
    } else {
        throw DomainError("parameter path '" + std::string(path) + "': unknown group");
    }
}

void check_sweep(const SweepSpec& spec) {
    if (spec.axes.empty() || spec.axes.size() > 2) throw DomainError("a sweep needs one or two axes");
    validate_config(spec.base);
    for (const auto& axis : spec.axes) {
        axis.grid.check();
        SystemConfig probe = spec.base;
        set_parameter(probe, axis.path, axis.grid.min);
    }
}

SweepResult run_sweep_serial(const SweepSpec& spec, const SolveOptions& options) {
    const Prepared p = prepare(spec);
    std::vector<std::vector<Cell>> rows(p.total);
    std::vector<std::exception_ptr> errors(p.total);
    for (std::size_t i = 0; i < p.total; ++i) {
        try {
            rows[i] = compute_row(spec, p, i, options);
        } catch (...) {
            errors[i] = std::current_exception();
            break;
        }
    }
    return assemble(spec, p, std::move(rows), std::move(errors));
}

SweepResult run_sweep(const SweepSpec& spec, int jobs, const SolveOptions& options) {
    if (jobs < 1) throw DomainError("jobs must be at least 1");
    const Prepared p = prepare(spec);
    std::vector<std::vector<Cell>> rows(p.total);
    std::vector<std::exception_ptr> errors(p.total);
    const auto total = static_cast<long long>(p.total);

#pragma omp parallel for schedule(dynamic) num_threads(jobs)
    for (long long i = 0; i < total; ++i) {
        const auto index = static_cast<std::size_t>(i);
        try {
            rows[index] = compute_row(spec, p, index, options);
        } catch (...) {
            errors[index] = std::current_exception();
        }
    }
    return assemble(spec, p, std::move(rows), std::move(errors));
}

int default_jobs() {
    if (const char* env = std::getenv("OMCOOL_JOBS")) {
        const std::string_view text(env);
        int value = 0;
        const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
        if (res.ec == std::errc() && res.ptr == text.data() + text.size() && value > 0) return value;
    }
    return omp_get_max_threads();
}

}  // namespace omcool
