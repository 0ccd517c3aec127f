#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dualspin/bloch.hpp"

namespace dualspin {

/// Fixed-step integration plan. The step-size guard dt*max|w| < 0.1
/// (at least ~63 steps per Larmor period) is enforced unless
/// allow_coarse_dt is set.
struct IntegrationConfig {
    double dt_s = 2.5e-6;
    double t_total_s = 4.0;
    double t_transient_s = 1.0;
    std::int64_t sample_stride = 3;
    std::uint64_t seed = 0;
    bool allow_coarse_dt = false;

    void validate(const SystemParams& p) const;
};

/// Gaussian z-field noise, redrawn every step and held constant across it.
/// By default each cell sees an independent draw, which jitters the
/// frequency difference the regimes are built on; common_mode applies a
/// single shared draw to both cells instead (a shared shield interior),
/// but that shifts every spectral line together and washes out the
/// regime dependence of the noise response.
struct NoiseConfig {
    double sigma_b_nt = 0.0;
    bool enabled = false;
    bool common_mode = false;
};

/// Uniformly sampled solution. Samples sit on the absolute step grid
/// (step index divisible by sample_stride), so a run with a transient
/// equals the suffix of the same run without one.
struct Trajectory {
    double t0_s = 0.0;
    double dt_sample_s = 0.0;
    std::vector<SpinState> states;
    std::vector<double> mx;  ///< observable_mx at each sample

    std::size_t size() const { return states.size(); }
    double time_at(std::size_t k) const { return t0_s + dt_sample_s * static_cast<double>(k); }
    double sample_rate_hz() const { return 1.0 / dt_sample_s; }
};

/// Classic fourth-order Runge-Kutta integration of the coupled Bloch
/// equations. Deterministic; bit-identical across runs on one platform.
/// Throws BlowUpError with the time of failure if the state goes
/// non-finite.
Trajectory integrate(const SystemParams& p, const SpinState& init, const IntegrationConfig& cfg);

/// As integrate(), but with seeded per-step Gaussian z-field noise.
/// With sigma_b_nt = 0 the output is bit-identical to integrate().
Trajectory integrate_noisy(const SystemParams& p, const SpinState& init,
                           const IntegrationConfig& cfg, const NoiseConfig& noise);

struct OrderEstimate {
    double slope = 0.0;
    bool conclusive = false;  ///< false when errors sit at the floating-point floor
};

/// Self-test of the integrator order: integrates the alpha = 0 system
/// (which has a closed-form solution) at each step size and returns the
/// least-squares slope of log(error) against log(dt). Requires alpha == 0,
/// at least three strictly decreasing step sizes, and t_total_s > 0.
OrderEstimate convergence_order(const SystemParams& p, const SpinState& init,
                                std::span<const double> dt_list, double t_total_s = 5.0e-3);

}  // namespace dualspin
