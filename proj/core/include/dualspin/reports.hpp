#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dualspin/analysis.hpp"
#include "dualspin/integrator.hpp"
#include "dualspin/sweep.hpp"

namespace dualspin {

/// Column-table emitters shared by the command-line tool and the test
/// suites, so that files produced through different paths are
/// byte-comparable. Every emitter prefixes the given header lines as
/// '#' comments.

void write_trajectory_table(const std::filesystem::path& path,
                            const std::vector<std::string>& header_lines, const Trajectory& traj);

void write_spectrum_table(const std::filesystem::path& path,
                          const std::vector<std::string>& header_lines, const Spectrum& spec);

void write_poincare_table(const std::filesystem::path& path,
                          const std::vector<std::string>& header_lines,
                          const PoincareSection& sec);

void write_phase_diagram_table(const std::filesystem::path& path,
                               const std::vector<std::string>& header_lines,
                               const PhaseDiagram& pd);

void write_boundary_table(const std::filesystem::path& path,
                          const std::vector<std::string>& header_lines, const PhaseDiagram& pd,
                          const std::vector<BoundaryEdge>& edges);

struct RobustnessRow {
    std::string point;
    double sigma_b_nt = 0.0;
    double q_mean = 0.0;
    double q_std = 0.0;
    int repeats = 0;
};

void write_robustness_table(const std::filesystem::path& path,
                            const std::vector<std::string>& header_lines,
                            const std::vector<RobustnessRow>& rows);

}  // namespace dualspin
