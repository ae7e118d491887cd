#include "lambda_store/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lambda_store/error.hpp"
#include "lambda_store/output.hpp"

namespace lambda_store {

namespace {

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw IoError("cannot read config " + path.string());
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace

int execute(const RunManifest& manifest, std::ostream& out, std::ostream& err)
{
    ScenarioConfig config;
    try {
        config = parse_config(read_file(manifest.config_path), manifest.scenario_kind,
                              manifest.overrides);
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::io;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_code::config;
    } catch (const InvalidInput& e) {
        err << "config error: " << e.what() << '\n';
        return exit_code::config;
    }

    SimulationRecord record;
    try {
        record = run_scenario(config);
    } catch (const NumericalError& e) {
        err << "numerical invariant violated (" << e.monitor() << "): " << e.what() << '\n';
        return exit_code::numerical;
    } catch (const InvalidInput& e) {
        err << "config error: " << e.what() << '\n';
        return exit_code::config;
    }

    try {
        emit_outputs(record, manifest.out_dir);
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::io;
    }

    const auto& m = record.monitors;
    out << "scenario " << to_string(config.kind) << ": " << record.exit_series.size()
        << " steps, " << record.peaks_eps1.size() << " eps1 peak(s), "
        << record.peaks_eps3.size() << " eps3 peak(s)\n";
    out << "monitors: trace " << format_float(m.max_trace_error) << ", hermiticity "
        << format_float(m.max_hermiticity_residual) << ", min eigenvalue "
        << format_float(m.min_eigenvalue) << ", phase " << format_float(m.max_phase_residual)
        << '\n';

    if (auto bad = first_violated_monitor(m)) {
        err << "numerical invariant violated: " << *bad << '\n';
        return exit_code::numerical;
    }
    return exit_code::ok;
}

void print_presets(std::ostream& out)
{
    bool first = true;
    for (auto kind : all_scenario_kinds) {
        if (kind == ScenarioKind::custom) {
            continue;
        }
        if (!first) {
            out << '\n';
        }
        first = false;
        out << "# ---- " << to_string(kind) << " ----\n" << emit_config(preset(kind));
    }
}

int run_cli(int argc, char** argv)
{
    CLI::App app{"Pulse storage and frequency conversion in a double-Lambda medium"};
    app.require_subcommand(1);

    RunManifest manifest;
    std::string scenario;
    std::vector<std::string> sets;

    auto* run = app.add_subcommand("run", "Run one scenario and write CSV output");
    run->add_option("--config", manifest.config_path, "Config file (section.key = value)")
        ->required();
    std::vector<std::string> names;
    for (auto k : all_scenario_kinds) {
        names.emplace_back(to_string(k));
    }
    run->add_option("--scenario", scenario, "Scenario preset")
        ->required()
        ->check(CLI::IsMember(names));
    run->add_option("--out", manifest.out_dir, "Output directory")->required();
    run->add_option("--set", sets, "Override, section.key=value (repeatable)");

    app.add_subcommand("presets", "Print the storage and release presets as config documents");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : exit_code::config;
    }

    if (app.got_subcommand("presets")) {
        print_presets(std::cout);
        return exit_code::ok;
    }

    manifest.scenario_kind = *parse_scenario_kind(scenario);
    try {
        for (const auto& item : sets) {
            auto [key, value] = parse_override(item);
            manifest.overrides[key] = value;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_code::config;
    }
    return execute(manifest, std::cout, std::cerr);
}

} // namespace lambda_store
