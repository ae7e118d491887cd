#pragma once

#include <filesystem>
#include <ostream>

#include "lambda_store/config.hpp"

namespace lambda_store {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int config = 2;
inline constexpr int numerical = 3;
inline constexpr int io = 4;
} // namespace exit_code

struct RunManifest
{
    std::filesystem::path config_path;
    std::filesystem::path out_dir;
    ScenarioKind scenario_kind = ScenarioKind::custom;
    Overrides overrides;
};

/// Loads the config, runs the scenario and writes the outputs. Returns one
/// of the exit codes above; diagnostics go to `err`.
int execute(const RunManifest& manifest, std::ostream& out, std::ostream& err);

/// Prints the four storage and release presets as complete config documents.
void print_presets(std::ostream& out);

/// Entry point of the lambda-store executable.
int run_cli(int argc, char** argv);

} // namespace lambda_store
