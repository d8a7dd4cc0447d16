// Command-line front end: solve, sweep, taxonomy, atomic, preset, emit.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "omcool/config_io.hpp"
#include "omcool/errors.hpp"
#include "omcool/pipeline.hpp"
#include "omcool/presets.hpp"
#include "omcool/svg.hpp"
#include "omcool/sweep.hpp"
#include "omcool/table.hpp"

namespace {

enum Exit : int {
    ok = 0,
    usage = 1,
    parse_error = 2,
    validation_error = 3,
    unstable = 4,
    solver_failure = 5,
    io_error = 6,
};

int exit_code_for(const std::exception_ptr& error) {
    try {
        std::rethrow_exception(error);
    } catch (const omcool::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return parse_error;
    } catch (const omcool::ConfigError& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return validation_error;
    } catch (const omcool::DomainError& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return validation_error;
    } catch (const omcool::UnstableSystemError& e) {
        std::cerr << "unstable system: " << e.what() << "\n";
        return unstable;
    } catch (const omcool::ConvergenceError& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return solver_failure;
    } catch (const omcool::SolverError& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return solver_failure;
    } catch (const omcool::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return io_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    }
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        std::cout.flush();
        if (!std::cout) throw omcool::IoError("error writing to standard output");
    } else {
        omcool::write_text_file(path, content);
    }
}

int finish_sweep(const omcool::SweepResult& result, const std::string& out) {
    write_output(out, omcool::to_csv(result.table));
    if (result.failure) {
        std::cerr << "sweep stopped at point " << result.failed_index << " of " << result.total_points
                  << "; rows before it were written\n";
        return exit_code_for(result.failure);
    }
    return ok;
}

std::size_t unstable_rows(const omcool::ResultTable& table) {
    if (!table.has_column("stable")) return 0;
    const auto c = table.column_index("stable");
    std::size_t n = 0;
    for (std::size_t r = 0; r < table.rows.size(); ++r)
        if (table.number(r, c) == 0.0) ++n;
    return n;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steady-state cooling of coupled optomechanical networks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", omcool::tool_version);

    std::string config_path, out_path;
    int jobs = 0;

    auto* solve = app.add_subcommand("solve", "Solve one configuration");
    solve->add_option("--config", config_path, "JSON configuration")->required();
    solve->add_option("--out", out_path, "Output CSV (default stdout)");

    std::vector<std::string> axis_specs;
    auto* sweep = app.add_subcommand("sweep", "Grid sweep over one or two parameters");
    sweep->add_option("--config", config_path, "JSON configuration")->required();
    sweep->add_option("--axis", axis_specs, "PATH:MIN:MAX:POINTS[:log]")->required()->expected(1, 2);
    sweep->add_option("--jobs", jobs, "Worker threads (default OMCOOL_JOBS or all cores)")->check(CLI::PositiveNumber);
    sweep->add_option("--out", out_path, "Output CSV (default stdout)");

    std::string kappa_spec;
    auto* taxonomy = app.add_subcommand("taxonomy", "Fourteen closed-channel configurations of a network4 system");
    taxonomy->add_option("--config", config_path, "JSON configuration")->required();
    taxonomy->add_option("--kappa", kappa_spec, "Optional intermediate-cavity decay grid MIN:MAX:POINTS[:log]");
    taxonomy->add_option("--out", out_path, "Output CSV (default stdout)");

    int levels = 3;
    std::string ratio_spec;
    auto* atomic = app.add_subcommand("atomic", "Eigenstructure of the three- or four-level atom");
    atomic->add_option("--levels", levels, "3 or 4")->check(CLI::IsMember({3, 4}));
    atomic->add_option("--ratio", ratio_spec, "MIN:MAX:POINTS[:log]")->required();
    atomic->add_option("--out", out_path, "Output CSV (default stdout)");

    std::string preset_name, case_label;
    bool dump = false, run = false, list = false;
    std::size_t points = 100;
    auto* preset = app.add_subcommand("preset", "Figure presets");
    preset->add_option("name", preset_name, "Preset name");
    auto* dump_flag = preset->add_flag("--dump", dump, "Print the preset configuration as JSON");
    preset->add_flag("--run", run, "Run the preset and write CSV")->excludes(dump_flag);
    preset->add_flag("--list", list, "List preset names");
    preset->add_option("--case", case_label, "Case label for --dump");
    preset->add_option("--points", points, "Grid points per axis")->check(CLI::Range(2, 100000));
    preset->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    preset->add_option("--out", out_path, "Output file (default stdout)");

    std::string format = "csv", in_path, column;
    auto* emit = app.add_subcommand("emit", "Re-emit a CSV result as CSV or SVG");
    emit->add_option("--format", format, "csv or svg")->check(CLI::IsMember({"csv", "svg"}));
    emit->add_option("--in", in_path, "Input CSV")->required();
    emit->add_option("--column", column, "Value column to plot");
    emit->add_option("--out", out_path, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? ok : usage;
    }

    try {
        if (jobs <= 0) jobs = omcool::default_jobs();

        if (*solve) {
            const auto config = omcool::parse_config(config_path);
            const auto table = omcool::run_solve(config);
            write_output(out_path, omcool::to_csv(table));
            if (unstable_rows(table) > 0) {
                std::cerr << "unstable system: drift matrix has eigenvalues with nonnegative real part\n";
                return unstable;
            }
            return ok;
        }
        if (*sweep) {
            omcool::SweepSpec spec;
            spec.base = omcool::parse_config(config_path).config();
            for (const auto& a : axis_specs) spec.axes.push_back(omcool::parse_axis(a));
            const auto result = omcool::run_sweep(spec, jobs);
            if (const auto n = unstable_rows(result.table))
                std::cerr << n << " unstable grid point(s) flagged with stable = 0\n";
            return finish_sweep(result, out_path);
        }
        if (*taxonomy) {
            const auto config = omcool::parse_config(config_path);
            std::optional<omcool::GridSpec> kappa;
            if (!kappa_spec.empty()) kappa = omcool::parse_grid(kappa_spec);
            write_output(out_path, omcool::to_csv(omcool::run_taxonomy(config, kappa)));
            return ok;
        }
        if (*atomic) {
            write_output(out_path, omcool::to_csv(omcool::run_atomic(levels, omcool::parse_grid(ratio_spec))));
            return ok;
        }
        if (*preset) {
            if (list || preset_name.empty()) {
                for (const auto& name : omcool::preset_names()) {
                    std::cout << name << "  " << omcool::make_preset(name, points).description << "\n";
                }
                return preset_name.empty() && !list ? usage : ok;
            }
            const auto p = omcool::make_preset(preset_name, points);
            if (dump) {
                if (p.kind == omcool::PresetKind::atomic)
                    throw omcool::DomainError("atomic presets have no optomechanical configuration");
                write_output(out_path, omcool::dump_config(omcool::preset_case(p, case_label).config));
                return ok;
            }
            if (run) return finish_sweep(omcool::run_preset(p, jobs), out_path);

            std::cout << p.name << ": " << p.description << "\n";
            for (const auto& c : p.cases) {
                std::cout << "  case " << (c.label.empty() ? "(default)" : c.label) << ":";
                for (const auto& a : c.axes)
                    std::cout << " --axis " << a.path << ":" << omcool::format_double(a.grid.min) << ":"
                              << omcool::format_double(a.grid.max) << ":" << a.grid.points;
                std::cout << "\n";
            }
            return ok;
        }
        if (*emit) {
            const auto table = omcool::parse_csv(omcool::read_text_file(in_path));
            write_output(out_path, format == "svg" ? omcool::render_svg(table, column) : omcool::to_csv(table));
            return ok;
        }
    } catch (...) {
        return exit_code_for(std::current_exception());
    }
    return usage;
}
