#pragma once

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <string>

#include "dualspin/analysis.hpp"
#include "dualspin/bloch.hpp"
#include "dualspin/integrator.hpp"

namespace testutil {

/// Stock physical constants with the default carrier unless overridden.
inline dualspin::SystemParams anchor_params(double dfreq_hz, double alpha_ratio,
                                            double carrier_hz = 5000.0) {
    return dualspin::make_params(carrier_hz, dfreq_hz, alpha_ratio);
}

/// Unique scratch directory, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("dualspin_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

/// Trajectory whose observable follows fn(t); the signal is placed in
/// cell 1's Mx so the Trajectory invariants hold.
inline dualspin::Trajectory synthetic_trajectory(const std::function<double(double)>& fn,
                                                 double sample_rate_hz, std::size_t n) {
    dualspin::Trajectory traj;
    traj.t0_s = 0.0;
    traj.dt_sample_s = 1.0 / sample_rate_hz;
    traj.states.resize(n);
    traj.mx.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double v = fn(static_cast<double>(k) * traj.dt_sample_s);
        traj.states[k].m = {v, 0.0, 0.0, 0.0, 0.0, 0.0};
        traj.mx[k] = v;
    }
    return traj;
}

}  // namespace testutil
