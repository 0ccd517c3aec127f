#pragma once

#include <filesystem>

namespace dualspin::cli {

/// Self-contained gnuplot scripts next to the exported tables. The
/// scripts are pure consumers of the tables: deleting or regenerating
/// them loses no data.
void write_simulate_plot(const std::filesystem::path& out_dir);
void write_phase_diagram_plot(const std::filesystem::path& out_dir);
void write_robustness_plot(const std::filesystem::path& out_dir);

}  // namespace dualspin::cli
