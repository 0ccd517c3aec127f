#pragma once

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dualspin/chaos01.hpp"
#include "dualspin/integrator.hpp"

namespace dualspin {

/// One-sided magnitude spectrum, DC through Nyquist. Amplitudes are
/// window-gain corrected so a unit sinusoid at a bin center reads 1.0.
struct Spectrum {
    std::vector<double> freqs_hz;
    std::vector<double> amps;
    double bin_width_hz = 0.0;
    std::string window = "hann";
    double sample_rate_hz = 0.0;
    std::size_t n_samples = 0;   ///< signal length before zero padding
    std::size_t n_fft = 0;       ///< padded transform length
    double window_sum = 0.0;     ///< sum of window samples (coherent gain * n)
};

/// Mean-removed, Hann-windowed, zero-padded magnitude spectrum of a
/// real series. Requires at least 1024 samples. The pad length is the
/// next power of two times four, which keeps the worst-case scalloping
/// of an on-grid tone below 2%.
Spectrum spectrum(std::span<const double> series, double sample_rate_hz);
Spectrum spectrum(const Trajectory& traj);

struct Peak {
    double freq_hz = 0.0;
    double amp = 0.0;
    std::size_t bin = 0;
};

/// Detected spectral lines, sorted by descending amplitude.
struct PeakSet {
    std::vector<Peak> peaks;

    std::size_t count() const { return peaks.size(); }
    const Peak& dominant() const { return peaks.front(); }
};

/// Local maxima with amplitude >= rel_threshold * global max, after
/// non-maximum suppression within min_separation_hz. The DC bin is
/// excluded. Requires 0 < rel_threshold < 1 and a non-empty spectrum.
PeakSet detect_peaks(const Spectrum& spec, double rel_threshold, double min_separation_hz);

/// Directed intersections with the plane My1 + My2 = 0 (negative to
/// positive crossings). Each point stores (Mx_total, Mz_total) at the
/// crossing, with all six components linearly interpolated.
struct PoincareSection {
    std::vector<std::array<double, 2>> points;
    std::size_t crossing_count = 0;
};

/// Requires at least 50 crossings in the trajectory, else throws
/// InsufficientData.
PoincareSection poincare_section(const Trajectory& traj);

/// Normalized spectral overlap of a clean and a perturbed run:
/// Q = sum|A0*As| / sqrt(sum A0^2 * sum As^2), in [0, 1] by
/// Cauchy-Schwarz. Both spectra must share the same frequency grid.
double robustness_q(const Spectrum& clean, const Spectrum& noisy);

enum class Regime {
    NoSignal,
    LimitCycle,
    QuasiPeriodic,
    Chaos,
    Failed,  ///< sweep-only: integration blew up at this grid point
};

const char* to_string(Regime r);
std::optional<Regime> regime_from_string(std::string_view s);

struct RegimeLabel {
    Regime regime = Regime::NoSignal;
    std::optional<double> k_statistic;
    int peak_count = 0;
    double dominant_freq_hz = std::numeric_limits<double>::quiet_NaN();
};

/// Decision thresholds for regime classification. The defaults reproduce
/// the three reference regimes; every value can be overridden from the
/// run configuration.
struct ClassifierThresholds {
    double epsilon_signal = 1.0e-3;       ///< NoSignal when RMS(mx) < eps * M0
    double peak_rel_threshold = 0.2;
    double peak_min_separation_hz = 5.0;
    double k_threshold = 0.8;             ///< Chaos when K >= this
    /// Slack on the synchronization-band check. Covers the finite FFT bin
    /// width and the small nonlinear pulling of the oscillation frequency,
    /// which matters only where the two Larmor frequencies (nearly)
    /// coincide (measured pull at zero splitting: under 5 Hz up to 24
    /// alpha_c).
    double freq_tolerance_hz = 6.0;
    Chaos01Options chaos01;
};

/// Classification cascade: NoSignal on a flat steady state; LimitCycle
/// when a single significant line sits between the two Larmor
/// frequencies; otherwise Chaos or QuasiPeriodic by the K statistic.
RegimeLabel classify_regime(const Trajectory& traj, const SystemParams& params,
                            const ClassifierThresholds& th = {});

/// RMS of the trailing half of the observable; the classifier's
/// steady-state signal measure.
double steady_state_rms(const Trajectory& traj);

}  // namespace dualspin
