#include "dualspin/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "dualspin/rng.hpp"

namespace dualspin {

namespace {

std::uint64_t hash_double(std::uint64_t h, double v) {
    return mix64(h, std::bit_cast<std::uint64_t>(v));
}

struct CheckpointRecord {
    std::size_t i, j;
    RegimeLabel label;
    double runtime_s;
};

std::optional<CheckpointRecord> parse_record(const std::string& line) {
    std::istringstream in(line);
    CheckpointRecord rec;
    std::string regime, k_hex, freq_hex, runtime_hex;
    if (!(in >> rec.i >> rec.j >> regime >> k_hex >> rec.label.peak_count >> freq_hex >>
          runtime_hex))
        return std::nullopt;
    const auto r = regime_from_string(regime);
    if (!r) return std::nullopt;
    rec.label.regime = *r;
    auto parse_hex = [](const std::string& s, double& out) {
        if (s == "-") return true;  // absent optional
        char* end = nullptr;
        out = std::strtod(s.c_str(), &end);
        return end != nullptr && *end == '\0';
    };
    double k = 0.0;
    if (!parse_hex(k_hex, k)) return std::nullopt;
    if (k_hex != "-") rec.label.k_statistic = k;
    if (!parse_hex(freq_hex, rec.label.dominant_freq_hz)) return std::nullopt;
    if (!parse_hex(runtime_hex, rec.runtime_s)) return std::nullopt;
    return rec;
}

std::string format_record(std::size_t i, std::size_t j, const PointRecord& pt) {
    char buf[256];
    char k_buf[40] = "-";
    if (pt.label.k_statistic) std::snprintf(k_buf, sizeof(k_buf), "%a", *pt.label.k_statistic);
    std::snprintf(buf, sizeof(buf), "%zu %zu %s %s %d %a %a\n", i, j,
                  to_string(pt.label.regime), k_buf, pt.label.peak_count,
                  pt.label.dominant_freq_hz, pt.runtime_s);
    return buf;
}

PointRecord compute_point(const SweepGrid& grid, const SweepOptions& opt, std::size_t i,
                          std::size_t j) {
    const auto t_start = std::chrono::steady_clock::now();
    PointRecord rec;
    const SystemParams params = grid.params_at(i, j);
    const std::uint64_t point_seed = mix64(opt.seed, static_cast<std::uint64_t>(i),
                                           static_cast<std::uint64_t>(j));
    IntegrationConfig cfg = opt.integration;
    cfg.seed = point_seed;
    ClassifierThresholds th = opt.thresholds;
    th.chaos01.seed = point_seed;
    try {
        const SpinState init = default_initial_state(params, grid.tilt);
        const Trajectory traj = integrate(params, init, cfg);
        rec.label = classify_regime(traj, params, th);
    } catch (const BlowUpError&) {
        rec.label = RegimeLabel{};
        rec.label.regime = Regime::Failed;
    }
    rec.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return rec;
}

}  // namespace

void SweepGrid::validate() const {
    base.validate();
    if (dfreq_hz.empty() || alpha_ratio.empty())
        throw InvalidInput("sweep grid axes must be non-empty");
    for (std::size_t i = 1; i < dfreq_hz.size(); ++i)
        if (!(dfreq_hz[i] > dfreq_hz[i - 1]))
            throw InvalidInput("dfreq axis must be strictly increasing");
    for (std::size_t j = 1; j < alpha_ratio.size(); ++j)
        if (!(alpha_ratio[j] > alpha_ratio[j - 1]))
            throw InvalidInput("gain axis must be strictly increasing");
}

SystemParams SweepGrid::params_at(std::size_t i, std::size_t j) const {
    SystemParams p = base;
    const double half_split = 0.5 * two_pi * dfreq_hz[i];
    const double mean = base.mean_omega();
    p.cells[0].larmor_rad_s = mean + half_split;
    p.cells[1].larmor_rad_s = mean - half_split;
    p.alpha = alpha_ratio[j] * critical_alpha(p);
    return p;
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
    std::vector<double> v(count);
    for (std::size_t k = 0; k < count; ++k)
        v[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1);
    return v;
}

SweepGrid default_grid() {
    SweepGrid grid;
    grid.dfreq_hz = linspace(0.0, 300.0, 31);
    grid.alpha_ratio = linspace(0.5, 24.0, 25);
    grid.base = make_params(5000.0, 0.0, 1.0);
    return grid;
}

std::uint64_t sweep_hash(const SweepGrid& grid, const SweepOptions& opt) {
    std::uint64_t h = 0x64756f7370696eULL;
    for (double v : grid.dfreq_hz) h = hash_double(h, v);
    for (double v : grid.alpha_ratio) h = hash_double(h, v);
    h = hash_double(h, grid.base.mean_omega());
    h = hash_double(h, grid.base.t1_s);
    h = hash_double(h, grid.base.t2_s);
    h = hash_double(h, grid.base.m0);
    h = hash_double(h, grid.base.gamma_rad_s_nt);
    h = hash_double(h, grid.tilt);
    h = hash_double(h, opt.integration.dt_s);
    h = hash_double(h, opt.integration.t_total_s);
    h = hash_double(h, opt.integration.t_transient_s);
    h = mix64(h, static_cast<std::uint64_t>(opt.integration.sample_stride));
    h = hash_double(h, opt.thresholds.epsilon_signal);
    h = hash_double(h, opt.thresholds.peak_rel_threshold);
    h = hash_double(h, opt.thresholds.peak_min_separation_hz);
    h = hash_double(h, opt.thresholds.k_threshold);
    h = hash_double(h, opt.thresholds.freq_tolerance_hz);
    h = mix64(h, static_cast<std::uint64_t>(opt.thresholds.chaos01.n_phases));
    h = mix64(h, opt.seed);
    return h;
}

PhaseDiagram run_sweep(const SweepGrid& grid, const SweepOptions& opt) {
    grid.validate();
    if (opt.workers < 1) throw InvalidInput("worker count must be >= 1");
    {
        // Fail fast on a bad integration plan instead of per point.
        opt.integration.validate(grid.params_at(grid.rows() - 1, 0));
    }

    const std::size_t n = grid.points();
    PhaseDiagram pd;
    pd.grid = grid;
    pd.points.resize(n);
    std::vector<char> done(n, 0);

    // Load any existing checkpoint; reject one written for a different sweep.
    const bool use_checkpoint = !opt.checkpoint_path.empty();
    const std::uint64_t expect_hash = sweep_hash(grid, opt);
    char header[96];
    std::snprintf(header, sizeof(header), "# dualspin sweep checkpoint v1 %016" PRIx64 "\n",
                  expect_hash);
    if (use_checkpoint && std::filesystem::exists(opt.checkpoint_path) && !opt.fresh) {
        std::ifstream in(opt.checkpoint_path);
        std::string line;
        if (std::getline(in, line)) {
            if (line + "\n" != header)
                throw CheckpointMismatch("checkpoint at " + opt.checkpoint_path.string() +
                                         " belongs to a different sweep");
            while (std::getline(in, line)) {
                const auto rec = parse_record(line);
                if (!rec || rec->i >= grid.rows() || rec->j >= grid.cols())
                    continue;  // ignore a torn trailing write
                const std::size_t idx = rec->i * grid.cols() + rec->j;
                pd.points[idx] = {rec->label, rec->runtime_s};
                done[idx] = 1;
            }
        }
    }

    std::ofstream ckpt;
    std::mutex ckpt_mutex;
    if (use_checkpoint) {
        const bool append = std::filesystem::exists(opt.checkpoint_path) && !opt.fresh &&
                            std::count(done.begin(), done.end(), 1) > 0;
        ckpt.open(opt.checkpoint_path, append ? std::ios::app : std::ios::trunc);
        if (!ckpt) throw Error("cannot open checkpoint file " + opt.checkpoint_path.string());
        if (!append) {
            ckpt << header;
            ckpt.flush();
        }
    }

    std::vector<std::size_t> todo;
    todo.reserve(n);
    for (std::size_t idx = 0; idx < n; ++idx)
        if (!done[idx]) todo.push_back(idx);

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t t = next.fetch_add(1);
            if (t >= todo.size()) return;
            const std::size_t idx = todo[t];
            const std::size_t i = idx / grid.cols();
            const std::size_t j = idx % grid.cols();
            const PointRecord rec = compute_point(grid, opt, i, j);
            pd.points[idx] = rec;
            if (use_checkpoint) {
                std::lock_guard<std::mutex> lock(ckpt_mutex);
                ckpt << format_record(i, j, rec);
                ckpt.flush();
            }
        }
    };

    if (opt.workers == 1 || todo.size() <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        const int n_threads = static_cast<int>(
            std::min<std::size_t>(static_cast<std::size_t>(opt.workers), todo.size()));
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int w = 0; w < n_threads; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return pd;
}

std::vector<BoundaryEdge> boundary_extract(const PhaseDiagram& pd) {
    std::vector<BoundaryEdge> edges;
    const std::size_t rows = pd.grid.rows();
    const std::size_t cols = pd.grid.cols();
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            const Regime a = pd.at(i, j).label.regime;
            if (j + 1 < cols) {
                const Regime b = pd.at(i, j + 1).label.regime;
                if (a != b) edges.push_back({i, j, i, j + 1, a, b});
            }
            if (i + 1 < rows) {
                const Regime b = pd.at(i + 1, j).label.regime;
                if (a != b) edges.push_back({i, j, i + 1, j, a, b});
            }
        }
    }
    return edges;
}

}  // namespace dualspin
