#include "dualspin/chaos01.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "dualspin/fft.hpp"
#include "dualspin/rng.hpp"

namespace dualspin {

namespace {

/// Frequency of the largest non-DC magnitude bin; 0 when there is none.
double dominant_frequency(std::span<const double> x, double sample_rate_hz) {
    const std::size_t n = x.size();
    std::vector<std::complex<double>> buf(fft::next_pow2(n));
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) buf[i] = x[i] - mean;
    fft::transform(buf);
    std::size_t best = 0;
    double best_mag = 0.0;
    for (std::size_t k = 1; k <= buf.size() / 2; ++k) {
        const double mag = std::abs(buf[k]);
        if (mag > best_mag) {
            best_mag = mag;
            best = k;
        }
    }
    if (best == 0) return 0.0;
    return static_cast<double>(best) * sample_rate_hz / static_cast<double>(buf.size());
}

double pearson_with_index(std::span<const double> y) {
    // Correlation of y against 1..n.
    const std::size_t n = y.size();
    const double nf = static_cast<double>(n);
    const double mean_x = 0.5 * (nf + 1.0);
    double mean_y = 0.0;
    for (double v : y) mean_y += v;
    mean_y /= nf;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = static_cast<double>(i + 1) - mean_x;
        const double dy = y[i] - mean_y;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (syy <= 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace

double chaos01_k(std::span<const double> series, double sample_rate_hz,
                 const Chaos01Options& opt) {
    if (series.size() < 2) throw InsufficientData("chaos01_k: series too short");
    if (!(sample_rate_hz > 0.0)) throw InvalidInput("chaos01_k: sample rate must be positive");

    double mean = 0.0, lo = series[0], hi = series[0];
    for (double v : series) {
        mean += v;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    mean /= static_cast<double>(series.size());
    if (hi - lo < 1e-12 * std::max(1.0, std::abs(mean)))
        throw UndefinedStatistic("chaos01_k: constant signal has no defined K");

    // Decimate to ~target_samples_per_period samples per dominant period,
    // but never below min_samples total.
    std::size_t factor = 1;
    double f_dom = opt.dominant_freq_hz;
    if (f_dom <= 0.0) f_dom = dominant_frequency(series, sample_rate_hz);
    if (f_dom > 0.0) {
        const double per_period = sample_rate_hz / f_dom;
        factor = std::max<std::size_t>(
            1, static_cast<std::size_t>(per_period / opt.target_samples_per_period));
        if (opt.min_samples > 0) {
            const std::size_t cap = std::max<std::size_t>(1, series.size() / opt.min_samples);
            factor = std::min(factor, cap);
        }
    }

    std::vector<double> phi;
    phi.reserve(series.size() / factor + 1);
    for (std::size_t i = 0; i < series.size(); i += factor) phi.push_back(series[i] - mean);
    if (phi.size() < opt.min_samples)
        throw InsufficientData("chaos01_k: need >= " + std::to_string(opt.min_samples) +
                               " samples after decimation, have " + std::to_string(phi.size()));
    if (phi.size() > opt.max_samples)
        phi.erase(phi.begin(), phi.end() - static_cast<std::ptrdiff_t>(opt.max_samples));

    const std::size_t n = phi.size();
    const std::size_t ncut = n / 10;

    Rng rng(opt.seed);
    std::vector<double> ks;
    ks.reserve(static_cast<std::size_t>(opt.n_phases));
    std::vector<double> p(n + 1), q(n + 1), msd(ncut);

    for (int trial = 0; trial < opt.n_phases; ++trial) {
        const double c =
            rng.uniform(std::numbers::pi / 5.0, 4.0 * std::numbers::pi / 5.0);
        p[0] = 0.0;
        q[0] = 0.0;
        for (std::size_t j = 1; j <= n; ++j) {
            const double arg = c * static_cast<double>(j);
            p[j] = p[j - 1] + phi[j - 1] * std::cos(arg);
            q[j] = q[j - 1] + phi[j - 1] * std::sin(arg);
        }
        for (std::size_t lag = 1; lag <= ncut; ++lag) {
            // four independent accumulators break the serial dependency on
            // the running sum; combined in a fixed order for determinism
            double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
            const std::size_t count = n - lag + 1;
            const std::size_t tail = count % 4;
            const double* pl = p.data() + lag;
            const double* pb = p.data();
            const double* ql = q.data() + lag;
            const double* qb = q.data();
            std::size_t j = 0;
            for (; j + 4 <= count; j += 4) {
                const double dp0 = pl[j] - pb[j], dq0 = ql[j] - qb[j];
                const double dp1 = pl[j + 1] - pb[j + 1], dq1 = ql[j + 1] - qb[j + 1];
                const double dp2 = pl[j + 2] - pb[j + 2], dq2 = ql[j + 2] - qb[j + 2];
                const double dp3 = pl[j + 3] - pb[j + 3], dq3 = ql[j + 3] - qb[j + 3];
                a0 += dp0 * dp0 + dq0 * dq0;
                a1 += dp1 * dp1 + dq1 * dq1;
                a2 += dp2 * dp2 + dq2 * dq2;
                a3 += dp3 * dp3 + dq3 * dq3;
            }
            for (std::size_t t = 0; t < tail; ++t, ++j) {
                const double dp = pl[j] - pb[j];
                const double dq = ql[j] - qb[j];
                a0 += dp * dp + dq * dq;
            }
            msd[lag - 1] = ((a0 + a1) + (a2 + a3)) / static_cast<double>(count);
        }
        ks.push_back(pearson_with_index(msd));
    }

    std::sort(ks.begin(), ks.end());
    const std::size_t m = ks.size();
    return (m % 2 == 1) ? ks[m / 2] : 0.5 * (ks[m / 2 - 1] + ks[m / 2]);
}

double chaos01_k(const Trajectory& traj, const Chaos01Options& opt) {
    return chaos01_k(traj.mx, traj.sample_rate_hz(), opt);
}

}  // namespace dualspin
