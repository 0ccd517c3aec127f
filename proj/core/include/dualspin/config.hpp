#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "dualspin/analysis.hpp"
#include "dualspin/integrator.hpp"
#include "dualspin/sweep.hpp"

namespace dualspin {

/// One operating point of the robustness comparison.
struct RobustnessPoint {
    std::string name;
    double dfreq_hz = 0.0;
    double alpha_over_alpha_c = 0.0;
};

/// Fully resolved run configuration. Parsed from a JSON document whose
/// keys carry their units (t2_ms, dfreq_hz, alpha_over_alpha_c, ...);
/// unknown keys are rejected. Every field has a default, so an empty
/// document is a valid configuration.
struct RunConfig {
    // system
    double mean_larmor_hz = 5000.0;
    double dfreq_hz = 40.0;
    double alpha_over_alpha_c = 16.0;
    double t1_ms = 5.0;
    double t2_ms = 2.0;
    double m0 = 0.5;
    double gamma_hz_per_nt = 7.0;
    double tilt = 0.1;

    IntegrationConfig integration;
    NoiseConfig noise;
    ClassifierThresholds thresholds;

    // grid (sweep)
    double grid_dfreq_min_hz = 0.0;
    double grid_dfreq_max_hz = 300.0;
    std::size_t grid_dfreq_count = 31;
    double grid_alpha_min = 0.5;
    double grid_alpha_max = 24.0;
    std::size_t grid_alpha_count = 25;

    // robustness
    std::vector<double> robustness_sigma_b_nt;
    int robustness_repeats = 10;
    std::vector<RobustnessPoint> robustness_points;

    RunConfig();

    SystemParams system_params() const;
    SystemParams system_params(double dfreq_hz_override, double alpha_ratio_override) const;
    SweepGrid sweep_grid() const;

    /// Canonical single-line JSON of the resolved configuration; embedded
    /// in every output header so a file can be regenerated from it.
    std::string canonical_json() const;
};

/// Parses a JSON document (text) into a RunConfig. Throws ConfigError on
/// syntax errors, unknown keys, or invalid values.
RunConfig parse_config(const std::string& json_text);

/// Loads and parses a configuration file, applying dot-path overrides
/// (e.g. "system.dfreq_hz=110") on the parsed document first.
RunConfig load_config(const std::filesystem::path& path,
                      const std::vector<std::string>& overrides = {});

}  // namespace dualspin
