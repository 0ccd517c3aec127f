#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "dualspin/analysis.hpp"
#include "dualspin/integrator.hpp"

namespace dualspin {

/// Rectangular grid over the (frequency difference, gain) plane. Each
/// point splits the base mean Larmor frequency symmetrically by
/// +-pi*dfreq so that w1 - w2 = 2*pi*dfreq while the mean stays fixed,
/// and scales the critical feedback coefficient by alpha_ratio.
struct SweepGrid {
    std::vector<double> dfreq_hz;      ///< ascending
    std::vector<double> alpha_ratio;   ///< ascending, in units of alpha_c
    SystemParams base;                 ///< both cells at the mean Larmor frequency
    double tilt = 0.1;

    std::size_t rows() const { return dfreq_hz.size(); }
    std::size_t cols() const { return alpha_ratio.size(); }
    std::size_t points() const { return rows() * cols(); }

    void validate() const;
    SystemParams params_at(std::size_t i, std::size_t j) const;
};

/// Evenly spaced axis helper.
std::vector<double> linspace(double lo, double hi, std::size_t count);

/// The stock grid bracketing the reference regimes: 31 frequency
/// differences over [0, 300] Hz by 25 gains over [0.5, 24] alpha_c,
/// at the default 5 kHz mean Larmor frequency.
SweepGrid default_grid();

struct PointRecord {
    RegimeLabel label;
    double runtime_s = 0.0;  ///< wall time; informational, not part of the deterministic output
};

struct PhaseDiagram {
    SweepGrid grid;
    std::vector<PointRecord> points;  ///< row-major, index i * cols + j

    const PointRecord& at(std::size_t i, std::size_t j) const {
        return points[i * grid.cols() + j];
    }
};

struct SweepOptions {
    IntegrationConfig integration;
    ClassifierThresholds thresholds;
    int workers = 1;
    std::uint64_t seed = 0;
    /// Append-only checkpoint; empty disables checkpointing. A header
    /// binds the checkpoint to a hash of the grid and options, and a
    /// mismatch raises CheckpointMismatch unless fresh is set.
    std::filesystem::path checkpoint_path;
    bool fresh = false;
};

/// Hash binding a checkpoint to the exact sweep it belongs to.
std::uint64_t sweep_hash(const SweepGrid& grid, const SweepOptions& opt);

/// Classifies every grid point. Embarrassingly parallel over points;
/// per-point seeds are derived from (i, j, seed) so the result is
/// identical for any worker count and across checkpoint resumes.
/// Integration blow-ups are recorded as Regime::Failed, never aborting
/// the sweep.
PhaseDiagram run_sweep(const SweepGrid& grid, const SweepOptions& opt);

struct BoundaryEdge {
    std::size_t i1, j1, i2, j2;  ///< adjacent grid points, (i1,j1) < (i2,j2) lexicographically
    Regime a, b;
};

/// All 4-neighbor pairs with differing labels, sorted by indices.
std::vector<BoundaryEdge> boundary_extract(const PhaseDiagram& pd);

}  // namespace dualspin
