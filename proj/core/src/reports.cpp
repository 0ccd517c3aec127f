#include "dualspin/reports.hpp"

#include "dualspin/table_io.hpp"

namespace dualspin {

void write_trajectory_table(const std::filesystem::path& path,
                            const std::vector<std::string>& header_lines, const Trajectory& traj) {
    TableWriter t(path, header_lines,
                  {"t_s", "mx1", "my1", "mz1", "mx2", "my2", "mz2", "mx_total"});
    for (std::size_t k = 0; k < traj.size(); ++k) {
        t.cell(traj.time_at(k));
        for (double v : traj.states[k].m) t.cell(v);
        t.cell(traj.mx[k]);
        t.end_row();
    }
}

void write_spectrum_table(const std::filesystem::path& path,
                          const std::vector<std::string>& header_lines, const Spectrum& spec) {
    TableWriter t(path, header_lines, {"freq_hz", "amp"});
    for (std::size_t k = 0; k < spec.freqs_hz.size(); ++k) {
        t.cell(spec.freqs_hz[k]);
        t.cell(spec.amps[k]);
        t.end_row();
    }
}

void write_poincare_table(const std::filesystem::path& path,
                          const std::vector<std::string>& header_lines,
                          const PoincareSection& sec) {
    TableWriter t(path, header_lines, {"mx_total", "mz_total"});
    for (const auto& pt : sec.points) {
        t.cell(pt[0]);
        t.cell(pt[1]);
        t.end_row();
    }
}

void write_phase_diagram_table(const std::filesystem::path& path,
                               const std::vector<std::string>& header_lines,
                               const PhaseDiagram& pd) {
    TableWriter t(path, header_lines, {"dfreq_hz", "alpha_ratio", "label", "k", "dominant_freq_hz"});
    for (std::size_t i = 0; i < pd.grid.rows(); ++i) {
        for (std::size_t j = 0; j < pd.grid.cols(); ++j) {
            const RegimeLabel& label = pd.at(i, j).label;
            t.cell(pd.grid.dfreq_hz[i]);
            t.cell(pd.grid.alpha_ratio[j]);
            t.cell(std::string(to_string(label.regime)));
            t.cell(label.k_statistic ? *label.k_statistic
                                     : std::numeric_limits<double>::quiet_NaN());
            t.cell(label.dominant_freq_hz);
            t.end_row();
        }
    }
}

void write_boundary_table(const std::filesystem::path& path,
                          const std::vector<std::string>& header_lines, const PhaseDiagram& pd,
                          const std::vector<BoundaryEdge>& edges) {
    TableWriter t(path, header_lines,
                  {"dfreq1_hz", "alpha1_ratio", "label1", "dfreq2_hz", "alpha2_ratio", "label2"});
    for (const auto& e : edges) {
        t.cell(pd.grid.dfreq_hz[e.i1]);
        t.cell(pd.grid.alpha_ratio[e.j1]);
        t.cell(std::string(to_string(e.a)));
        t.cell(pd.grid.dfreq_hz[e.i2]);
        t.cell(pd.grid.alpha_ratio[e.j2]);
        t.cell(std::string(to_string(e.b)));
        t.end_row();
    }
}

void write_robustness_table(const std::filesystem::path& path,
                            const std::vector<std::string>& header_lines,
                            const std::vector<RobustnessRow>& rows) {
    TableWriter t(path, header_lines, {"point", "sigma_b_nt", "q_mean", "q_std", "repeats"});
    for (const auto& r : rows) {
        t.cell(r.point);
        t.cell(r.sigma_b_nt);
        t.cell(r.q_mean);
        t.cell(r.q_std);
        t.cell(static_cast<long long>(r.repeats));
        t.end_row();
    }
}

}  // namespace dualspin
