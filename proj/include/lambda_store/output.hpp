#pragma once

#include <filesystem>
#include <string>

#include "lambda_store/scenario.hpp"

namespace lambda_store {

/// `%.12e` with the exponent reduced to its minimal form: 1.5e-3 prints as
/// 1.500000000000e-3, zero (of either sign) as 0.000000000000e0.
std::string format_float(double x);

std::string exit_csv(const SimulationRecord& record);
std::string coherence_csv(const SimulationRecord& record);
std::string peaks_txt(const SimulationRecord& record);

/// Writes exit.csv, coherence.csv and peaks.txt into `out_dir`, creating it
/// if needed. Throws IoError naming the path on failure.
void emit_outputs(const SimulationRecord& record, const std::filesystem::path& out_dir);

} // namespace lambda_store
