#include "dualspin/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "dualspin/fft.hpp"

namespace dualspin {

Spectrum spectrum(std::span<const double> series, double sample_rate_hz) {
    if (series.size() < 1024)
        throw InsufficientData("spectrum: need >= 1024 samples, have " +
                               std::to_string(series.size()));
    if (!(sample_rate_hz > 0.0)) throw InvalidInput("spectrum: sample rate must be positive");

    const std::size_t n = series.size();
    double mean = 0.0;
    for (double v : series) mean += v;
    mean /= static_cast<double>(n);

    const std::size_t n_fft = fft::next_pow2(n) * 4;
    std::vector<std::complex<double>> buf(n_fft);
    double window_sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double w =
            0.5 * (1.0 - std::cos(two_pi * static_cast<double>(j) / static_cast<double>(n)));
        window_sum += w;
        buf[j] = (series[j] - mean) * w;
    }
    fft::transform(buf);

    Spectrum spec;
    spec.sample_rate_hz = sample_rate_hz;
    spec.n_samples = n;
    spec.n_fft = n_fft;
    spec.window_sum = window_sum;
    spec.bin_width_hz = sample_rate_hz / static_cast<double>(n_fft);
    const std::size_t n_bins = n_fft / 2 + 1;
    spec.freqs_hz.resize(n_bins);
    spec.amps.resize(n_bins);
    for (std::size_t k = 0; k < n_bins; ++k) {
        spec.freqs_hz[k] = static_cast<double>(k) * spec.bin_width_hz;
        // One-sided amplitude, coherent-gain corrected; DC and Nyquist are
        // not doubled.
        const double scale = (k == 0 || k == n_fft / 2) ? 1.0 : 2.0;
        spec.amps[k] = scale * std::abs(buf[k]) / window_sum;
    }
    return spec;
}

Spectrum spectrum(const Trajectory& traj) { return spectrum(traj.mx, traj.sample_rate_hz()); }

PeakSet detect_peaks(const Spectrum& spec, double rel_threshold, double min_separation_hz) {
    if (spec.amps.empty()) throw InvalidInput("detect_peaks: empty spectrum");
    if (!(rel_threshold > 0.0) || !(rel_threshold < 1.0))
        throw InvalidInput("detect_peaks: rel_threshold must be in (0, 1)");

    double global_max = 0.0;
    for (std::size_t k = 1; k < spec.amps.size(); ++k) global_max = std::max(global_max, spec.amps[k]);
    PeakSet out;
    if (global_max <= 0.0) return out;

    const double threshold = rel_threshold * global_max;
    std::vector<Peak> candidates;
    for (std::size_t k = 1; k + 1 < spec.amps.size(); ++k) {
        const double a = spec.amps[k];
        if (a >= threshold && a > spec.amps[k - 1] && a >= spec.amps[k + 1])
            candidates.push_back({spec.freqs_hz[k], a, k});
    }
    std::sort(candidates.begin(), candidates.end(), [](const Peak& a, const Peak& b) {
        return a.amp != b.amp ? a.amp > b.amp : a.bin < b.bin;
    });

    for (const Peak& c : candidates) {
        bool suppressed = false;
        for (const Peak& kept : out.peaks) {
            if (std::abs(kept.freq_hz - c.freq_hz) < min_separation_hz) {
                suppressed = true;
                break;
            }
        }
        if (!suppressed) out.peaks.push_back(c);
    }
    return out;
}

PoincareSection poincare_section(const Trajectory& traj) {
    PoincareSection sec;
    for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
        const double a = total_my(traj.states[k]);
        const double b = total_my(traj.states[k + 1]);
        if (a < 0.0 && b >= 0.0) {
            const double theta = a / (a - b);
            const auto& s0 = traj.states[k].m;
            const auto& s1 = traj.states[k + 1].m;
            std::array<double, 6> si;
            for (int i = 0; i < 6; ++i) si[i] = s0[i] + theta * (s1[i] - s0[i]);
            sec.points.push_back({si[0] + si[3], si[2] + si[5]});
        }
    }
    sec.crossing_count = sec.points.size();
    if (sec.crossing_count < 50)
        throw InsufficientData("poincare_section: only " + std::to_string(sec.crossing_count) +
                               " crossings; need >= 50");
    return sec;
}

double robustness_q(const Spectrum& clean, const Spectrum& noisy) {
    if (clean.amps.size() != noisy.amps.size() ||
        std::abs(clean.bin_width_hz - noisy.bin_width_hz) >
            1e-12 * std::max(clean.bin_width_hz, noisy.bin_width_hz))
        throw InvalidInput("robustness_q: spectra must share the same frequency grid");
    double cross = 0.0, e0 = 0.0, e1 = 0.0;
    for (std::size_t k = 0; k < clean.amps.size(); ++k) {
        cross += std::abs(clean.amps[k] * noisy.amps[k]);
        e0 += clean.amps[k] * clean.amps[k];
        e1 += noisy.amps[k] * noisy.amps[k];
    }
    if (e0 <= 0.0 || e1 <= 0.0) throw InvalidInput("robustness_q: zero-energy spectrum");
    return cross / std::sqrt(e0 * e1);
}

const char* to_string(Regime r) {
    switch (r) {
        case Regime::NoSignal: return "no_signal";
        case Regime::LimitCycle: return "limit_cycle";
        case Regime::QuasiPeriodic: return "quasi_periodic";
        case Regime::Chaos: return "chaos";
        case Regime::Failed: return "failed";
    }
    return "unknown";
}

std::optional<Regime> regime_from_string(std::string_view s) {
    if (s == "no_signal") return Regime::NoSignal;
    if (s == "limit_cycle") return Regime::LimitCycle;
    if (s == "quasi_periodic") return Regime::QuasiPeriodic;
    if (s == "chaos") return Regime::Chaos;
    if (s == "failed") return Regime::Failed;
    return std::nullopt;
}

double steady_state_rms(const Trajectory& traj) {
    if (traj.mx.empty()) throw InvalidInput("steady_state_rms: empty trajectory");
    const std::size_t start = traj.mx.size() / 2;
    double acc = 0.0;
    for (std::size_t k = start; k < traj.mx.size(); ++k) acc += traj.mx[k] * traj.mx[k];
    return std::sqrt(acc / static_cast<double>(traj.mx.size() - start));
}

namespace {

// The classifier only needs the band up to the upper Larmor frequency
// plus sidebands, and the line resolution depends on the record length,
// not the raw rate. Decimating to ~4x the highest Larmor frequency cuts
// the transform length several-fold at identical resolution.
Spectrum classifier_spectrum(const Trajectory& traj, const SystemParams& params) {
    const double fs = traj.sample_rate_hz();
    const double f_max_hz = params.max_abs_omega() / two_pi;
    std::size_t decim = 1;
    if (f_max_hz > 0.0)
        decim = std::max<std::size_t>(1, static_cast<std::size_t>(fs / (4.0 * f_max_hz)));
    if (decim > 1 && traj.mx.size() / decim < 1024)
        decim = std::max<std::size_t>(1, traj.mx.size() / 1024);
    if (decim == 1) return spectrum(traj);
    std::vector<double> ds;
    ds.reserve(traj.mx.size() / decim + 1);
    for (std::size_t k = 0; k < traj.mx.size(); k += decim) ds.push_back(traj.mx[k]);
    return spectrum(ds, fs / static_cast<double>(decim));
}

}  // namespace

RegimeLabel classify_regime(const Trajectory& traj, const SystemParams& params,
                            const ClassifierThresholds& th) {
    RegimeLabel label;
    if (steady_state_rms(traj) < th.epsilon_signal * params.m0) {
        label.regime = Regime::NoSignal;
        return label;
    }

    const Spectrum spec = classifier_spectrum(traj, params);
    const PeakSet peaks = detect_peaks(spec, th.peak_rel_threshold, th.peak_min_separation_hz);
    label.peak_count = static_cast<int>(peaks.count());
    if (peaks.count() == 0) {
        // Oscillatory energy but no resolvable line; treat as no signal.
        label.regime = Regime::NoSignal;
        return label;
    }
    label.dominant_freq_hz = peaks.dominant().freq_hz;

    const double f1 = params.cells[0].larmor_rad_s / two_pi;
    const double f2 = params.cells[1].larmor_rad_s / two_pi;
    const double f_lo = std::min(f1, f2) - th.freq_tolerance_hz;
    const double f_hi = std::max(f1, f2) + th.freq_tolerance_hz;
    if (peaks.count() == 1 && label.dominant_freq_hz >= f_lo && label.dominant_freq_hz <= f_hi) {
        label.regime = Regime::LimitCycle;
        return label;
    }

    Chaos01Options opt = th.chaos01;
    if (opt.dominant_freq_hz <= 0.0) opt.dominant_freq_hz = label.dominant_freq_hz;
    try {
        label.k_statistic = chaos01_k(traj, opt);
    } catch (const UndefinedStatistic&) {
        label.regime = Regime::NoSignal;
        return label;
    }
    label.regime =
        (*label.k_statistic >= th.k_threshold) ? Regime::Chaos : Regime::QuasiPeriodic;
    return label;
}

}  // namespace dualspin
