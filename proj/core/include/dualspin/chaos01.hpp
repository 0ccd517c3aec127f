#pragma once

#include <cstdint>
#include <span>

#include "dualspin/integrator.hpp"

namespace dualspin {

/// Tuning of the 0-1 test for chaos (Gottwald-Melbourne, correlation
/// variant). The test reports spuriously low K on oversampled flows: a
/// narrowband carrier confines the spectral content away from most test
/// phases and the translation variables stay bounded even for chaotic
/// signals. The series is therefore decimated hard, to roughly
/// target_samples_per_period samples per dominant period, which aliases
/// the signal band across the whole phase range; it is then truncated to
/// the trailing max_samples points. Decimation never reduces the series
/// below min_samples.
struct Chaos01Options {
    int n_phases = 100;                      ///< random phases c in (pi/5, 4*pi/5)
    std::uint64_t seed = 0;
    double target_samples_per_period = 1.3;
    std::size_t max_samples = 10000;
    std::size_t min_samples = 10000;         ///< required length after decimation
    double dominant_freq_hz = 0.0;           ///< 0 = estimate from the spectrum
};

/// K statistic of the 0-1 chaos test: ~1 for chaotic series, ~0 for
/// regular ones. Translation variables p_c, q_c are accumulated for each
/// random phase c, the mean-square displacement M_c(n) is correlated with
/// n over n <= N/10, and the median over phases is returned.
///
/// Throws UndefinedStatistic for a constant signal and InsufficientData
/// when fewer than min_samples points remain after decimation.
double chaos01_k(std::span<const double> series, double sample_rate_hz,
                 const Chaos01Options& opt = {});

/// Convenience overload on the trajectory observable.
double chaos01_k(const Trajectory& traj, const Chaos01Options& opt = {});

}  // namespace dualspin
