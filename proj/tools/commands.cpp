#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "dualspin/analysis.hpp"
#include "dualspin/config.hpp"
#include "dualspin/pointset.hpp"
#include "dualspin/reports.hpp"
#include "dualspin/rng.hpp"
#include "dualspin/table_io.hpp"
#include "dualspin/version.hpp"
#include "plots.hpp"

namespace dualspin::cli {

using nlohmann::json;

namespace {

RunConfig load(const CommonOpts& opts) {
    RunConfig rc = load_config(opts.config_path, opts.overrides);
    if (opts.seed) rc.integration.seed = *opts.seed;
    return rc;
}

std::vector<std::string> table_headers(const char* command, const RunConfig& rc) {
    return {
        std::string("dualspin ") + command,
        std::string("version: ") + version_string,
        "seed: " + std::to_string(rc.integration.seed),
        "config: " + rc.canonical_json(),
    };
}

json peaks_json(const PeakSet& peaks, std::size_t limit = 10) {
    json arr = json::array();
    for (std::size_t k = 0; k < std::min(limit, peaks.count()); ++k)
        arr.push_back({{"freq_hz", peaks.peaks[k].freq_hz}, {"amp", peaks.peaks[k].amp}});
    return arr;
}

void write_summary(const std::filesystem::path& path, const json& doc) {
    std::ofstream out(path, std::ios::binary);
    out << doc.dump(2) << "\n";
}

}  // namespace

int cmd_simulate(const CommonOpts& opts) {
    const RunConfig rc = load(opts);
    std::filesystem::create_directories(opts.out_dir);

    const SystemParams params = rc.system_params();
    const SpinState init = default_initial_state(params, rc.tilt);
    const auto headers = table_headers("simulate", rc);

    json summary;
    summary["command"] = "simulate";
    summary["version"] = version_string;
    summary["seed"] = rc.integration.seed;
    summary["config"] = json::parse(rc.canonical_json());

    Trajectory traj;
    try {
        traj = rc.noise.enabled ? integrate_noisy(params, init, rc.integration, rc.noise)
                                : integrate(params, init, rc.integration);
    } catch (const BlowUpError& e) {
        summary["status"] = "blowup";
        summary["blowup_time_s"] = e.time_s();
        summary["error"] = e.what();
        write_summary(opts.out_dir / "summary.json", summary);
        std::fprintf(stderr, "dualspin: %s (partial outputs in %s)\n", e.what(),
                     opts.out_dir.string().c_str());
        return 3;
    }

    write_trajectory_table(opts.out_dir / "trajectory.tsv", headers, traj);

    const Spectrum spec = spectrum(traj);
    write_spectrum_table(opts.out_dir / "spectrum.tsv", headers, spec);

    const PeakSet peaks =
        detect_peaks(spec, rc.thresholds.peak_rel_threshold, rc.thresholds.peak_min_separation_hz);
    const RegimeLabel label = classify_regime(traj, params, rc.thresholds);

    PoincareSection section;
    try {
        section = poincare_section(traj);
        summary["poincare_crossings"] = section.crossing_count;
    } catch (const InsufficientData& e) {
        summary["poincare_crossings"] = 0;
        summary["poincare_note"] = e.what();
    }
    write_poincare_table(opts.out_dir / "poincare.tsv", headers, section);

    summary["status"] = "ok";
    summary["label"] = to_string(label.regime);
    if (label.k_statistic)
        summary["k_statistic"] = *label.k_statistic;
    else
        summary["k_statistic"] = nullptr;
    summary["peak_count"] = label.peak_count;
    summary["dominant_freq_hz"] =
        std::isnan(label.dominant_freq_hz) ? json(nullptr) : json(label.dominant_freq_hz);
    summary["rms_mx"] = steady_state_rms(traj);
    summary["peaks"] = peaks_json(peaks);
    write_summary(opts.out_dir / "summary.json", summary);

    write_simulate_plot(opts.out_dir);
    std::printf("simulate: %s (peaks %d", to_string(label.regime), label.peak_count);
    if (label.k_statistic) std::printf(", K %.4f", *label.k_statistic);
    std::printf(") -> %s\n", opts.out_dir.string().c_str());
    return 0;
}

int cmd_sweep(const CommonOpts& opts) {
    const RunConfig rc = load(opts);
    std::filesystem::create_directories(opts.out_dir);

    SweepGrid grid = rc.sweep_grid();
    SweepOptions so;
    so.integration = rc.integration;
    so.thresholds = rc.thresholds;
    so.workers = opts.workers;
    so.seed = rc.integration.seed;
    so.checkpoint_path = opts.out_dir / "sweep.checkpoint";
    so.fresh = opts.fresh;

    const PhaseDiagram pd = run_sweep(grid, so);
    const auto headers = table_headers("sweep", rc);
    write_phase_diagram_table(opts.out_dir / "phase_diagram.tsv", headers, pd);
    write_boundary_table(opts.out_dir / "boundaries.tsv", headers, pd, boundary_extract(pd));
    write_phase_diagram_plot(opts.out_dir);

    std::size_t counts[5] = {0, 0, 0, 0, 0};
    for (const auto& pt : pd.points) counts[static_cast<int>(pt.label.regime)]++;
    std::printf("sweep: %zu points (no_signal %zu, limit_cycle %zu, quasi_periodic %zu, chaos %zu, "
                "failed %zu) -> %s\n",
                pd.points.size(), counts[0], counts[1], counts[2], counts[3], counts[4],
                opts.out_dir.string().c_str());
    return 0;
}

int cmd_robustness(const CommonOpts& opts) {
    const RunConfig rc = load(opts);
    if (rc.robustness_sigma_b_nt.size() < 3)
        throw ConfigError("robustness needs a sigma_b_nt list with >= 3 values");
    if (rc.robustness_repeats < 3) throw ConfigError("robustness needs repeats >= 3");
    if (rc.robustness_points.empty()) throw ConfigError("robustness needs at least one point");
    std::filesystem::create_directories(opts.out_dir);

    std::vector<RobustnessRow> rows;
    for (std::size_t pi = 0; pi < rc.robustness_points.size(); ++pi) {
        const auto& pt = rc.robustness_points[pi];
        const SystemParams params = rc.system_params(pt.dfreq_hz, pt.alpha_over_alpha_c);
        const SpinState init = default_initial_state(params, rc.tilt);
        const Spectrum clean = spectrum(integrate(params, init, rc.integration));

        for (std::size_t si = 0; si < rc.robustness_sigma_b_nt.size(); ++si) {
            NoiseConfig noise = rc.noise;
            noise.enabled = true;
            noise.sigma_b_nt = rc.robustness_sigma_b_nt[si];
            double sum = 0.0, sum2 = 0.0;
            const int reps = rc.robustness_repeats;
            for (int r = 0; r < reps; ++r) {
                IntegrationConfig cfg = rc.integration;
                cfg.seed = mix64(rc.integration.seed, mix64(pi, si), static_cast<std::uint64_t>(r));
                const double q = robustness_q(clean, spectrum(integrate_noisy(params, init, cfg, noise)));
                sum += q;
                sum2 += q * q;
            }
            const double mean = sum / reps;
            const double var = std::max(0.0, (sum2 - sum * sum / reps) / (reps - 1));
            rows.push_back({pt.name, noise.sigma_b_nt, mean, std::sqrt(var), reps});
        }
    }

    const auto headers = table_headers("robustness", rc);
    write_robustness_table(opts.out_dir / "robustness.tsv", headers, rows);
    write_robustness_plot(opts.out_dir);
    std::printf("robustness: %zu rows -> %s\n", rows.size(), opts.out_dir.string().c_str());
    return 0;
}

int cmd_chaos_test(const std::filesystem::path& input, std::uint64_t seed) {
    const SeriesFile sf = read_series(input);
    Chaos01Options opt;
    opt.seed = seed;
    const double k = chaos01_k(sf.values, sf.sample_rate_hz, opt);
    std::printf("%.4f\n", k);
    return 0;
}

}  // namespace dualspin::cli
