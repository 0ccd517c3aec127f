#include "dualspin/integrator.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <string>

#include "dualspin/rng.hpp"

namespace dualspin {

namespace {

using State6 = std::array<double, 6>;

inline void rk4_step(State6& y, const SystemParams& p, double dt) {
    State6 k1, k2, k3, k4, tmp;
    detail::bloch_rhs(y, p, k1);
    for (int i = 0; i < 6; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
    detail::bloch_rhs(tmp, p, k2);
    for (int i = 0; i < 6; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
    detail::bloch_rhs(tmp, p, k3);
    for (int i = 0; i < 6; ++i) tmp[i] = y[i] + dt * k3[i];
    detail::bloch_rhs(tmp, p, k4);
    const double w = dt / 6.0;
    for (int i = 0; i < 6; ++i) y[i] += w * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

inline bool finite6(const State6& y) {
    for (double v : y)
        if (!std::isfinite(v)) return false;
    return true;
}

// Subcritical runs decay through the subnormal range, where arithmetic is
// an order of magnitude slower; anything this small is exactly zero for
// every downstream purpose.
inline void flush_tiny(State6& y) {
    for (double& v : y)
        if (std::abs(v) < 1e-300) v = 0.0;
}

Trajectory integrate_impl(const SystemParams& p, const SpinState& init,
                          const IntegrationConfig& cfg, const NoiseConfig* noise) {
    p.validate();
    cfg.validate(p);
    if (!init.all_finite()) throw InvalidInput("integrate: non-finite initial state");

    const double dt = cfg.dt_s;
    const std::int64_t n_steps = std::llround(cfg.t_total_s / dt);
    const std::int64_t stride = cfg.sample_stride;

    // First recorded step: the smallest stride multiple with s*dt >= t_transient.
    std::int64_t s_min = static_cast<std::int64_t>(std::ceil(cfg.t_transient_s / dt - 1e-9));
    if (s_min < 0) s_min = 0;
    const std::int64_t s0 = ((s_min + stride - 1) / stride) * stride;

    Trajectory traj;
    traj.t0_s = static_cast<double>(s0) * dt;
    traj.dt_sample_s = dt * static_cast<double>(stride);
    if (s0 <= n_steps) {
        const std::size_t count = static_cast<std::size_t>((n_steps - s0) / stride) + 1;
        traj.states.reserve(count);
        traj.mx.reserve(count);
    }

    Rng rng(cfg.seed);
    const bool noisy = noise != nullptr && noise->enabled;

    SpinState state = init;
    for (std::int64_t s = 0;; ++s) {
        if (s >= s0 && (s % stride) == 0) {
            traj.states.push_back(state);
            traj.mx.push_back(observable_mx(state));
        }
        if (s == n_steps) break;

        if (noisy) {
            SystemParams ps = p;
            if (noise->common_mode) {
                const double dw = p.gamma_rad_s_nt * noise->sigma_b_nt * rng.gaussian();
                ps.cells[0].larmor_rad_s += dw;
                ps.cells[1].larmor_rad_s += dw;
            } else {
                ps.cells[0].larmor_rad_s += p.gamma_rad_s_nt * noise->sigma_b_nt * rng.gaussian();
                ps.cells[1].larmor_rad_s += p.gamma_rad_s_nt * noise->sigma_b_nt * rng.gaussian();
            }
            rk4_step(state.m, ps, dt);
        } else {
            rk4_step(state.m, p, dt);
        }

        flush_tiny(state.m);
        if (!finite6(state.m)) {
            const double t_fail = static_cast<double>(s + 1) * dt;
            char buf[96];
            std::snprintf(buf, sizeof(buf), "integration blew up at t = %.9g s", t_fail);
            throw BlowUpError(buf, t_fail);
        }
    }
    if (traj.size() < 2)
        throw InvalidInput("sampling plan yields fewer than 2 samples; reduce sample_stride "
                           "or t_transient_s");
    return traj;
}

/// Closed-form solution of the alpha = 0 (linear) system:
/// transverse components precess and decay with T2, Mz relaxes to M0 with T1.
SpinState linear_solution(const SystemParams& p, const SpinState& init, double t) {
    SpinState out;
    for (int c = 0; c < 2; ++c) {
        const double w = p.cells[c].larmor_rad_s;
        const std::complex<double> m_perp0(init.m[3 * c], init.m[3 * c + 1]);
        const std::complex<double> m_perp =
            m_perp0 * std::exp(std::complex<double>(-t / p.t2_s, -w * t));
        out.m[3 * c] = m_perp.real();
        out.m[3 * c + 1] = m_perp.imag();
        out.m[3 * c + 2] = p.m0 + (init.m[3 * c + 2] - p.m0) * std::exp(-t / p.t1_s);
    }
    return out;
}

}  // namespace

void IntegrationConfig::validate(const SystemParams& p) const {
    if (!(dt_s > 0.0) || !std::isfinite(dt_s)) throw InvalidInput("dt_s must be positive");
    if (!(t_total_s > 0.0) || !std::isfinite(t_total_s))
        throw InvalidInput("t_total_s must be positive");
    if (t_transient_s < 0.0 || t_transient_s >= t_total_s)
        throw InvalidInput("t_transient_s must satisfy 0 <= t_transient < t_total");
    if (sample_stride < 1) throw InvalidInput("sample_stride must be >= 1");
    if (!allow_coarse_dt && dt_s * p.max_abs_omega() >= 0.1)
        throw InvalidInput("dt_s * max|omega| = " + std::to_string(dt_s * p.max_abs_omega()) +
                           " exceeds 0.1 rad/step; refine dt_s or set allow_coarse_dt");
}

Trajectory integrate(const SystemParams& p, const SpinState& init, const IntegrationConfig& cfg) {
    return integrate_impl(p, init, cfg, nullptr);
}

Trajectory integrate_noisy(const SystemParams& p, const SpinState& init,
                           const IntegrationConfig& cfg, const NoiseConfig& noise) {
    if (!noise.enabled) throw InvalidInput("integrate_noisy requires noise.enabled");
    if (noise.sigma_b_nt < 0.0 || !std::isfinite(noise.sigma_b_nt))
        throw InvalidInput("sigma_b_nt must be >= 0");
    return integrate_impl(p, init, cfg, &noise);
}

OrderEstimate convergence_order(const SystemParams& p, const SpinState& init,
                                std::span<const double> dt_list, double t_total_s) {
    p.validate();
    if (p.alpha != 0.0)
        throw InvalidInput("convergence_order requires alpha = 0 (analytic solution)");
    if (dt_list.size() < 3) throw InvalidInput("convergence_order needs >= 3 step sizes");
    for (std::size_t i = 1; i < dt_list.size(); ++i)
        if (!(dt_list[i] < dt_list[i - 1]))
            throw InvalidInput("dt_list must be strictly decreasing");
    if (!(t_total_s > 0.0)) throw InvalidInput("t_total_s must be positive");

    std::vector<double> log_dt, log_err;
    double min_err = std::numeric_limits<double>::infinity();
    for (double dt : dt_list) {
        IntegrationConfig cfg;
        cfg.dt_s = dt;
        cfg.t_total_s = t_total_s;
        cfg.t_transient_s = 0.0;
        // Record only the endpoint; the error is evaluated there.
        const std::int64_t n_steps = std::llround(t_total_s / dt);
        cfg.sample_stride = n_steps;
        Trajectory traj = integrate(p, init, cfg);
        const SpinState& last = traj.states.back();
        const double t_end = traj.time_at(traj.size() - 1);
        const SpinState exact = linear_solution(p, init, t_end);
        double err = 0.0;
        for (int i = 0; i < 6; ++i) err = std::max(err, std::abs(last.m[i] - exact.m[i]));
        min_err = std::min(min_err, err);
        log_dt.push_back(std::log(dt));
        log_err.push_back(std::log(err));
    }

    OrderEstimate est;
    est.conclusive = min_err > 64.0 * std::numeric_limits<double>::epsilon() * p.m0;
    if (!est.conclusive) return est;

    // Least-squares slope of log(err) vs log(dt).
    const double n = static_cast<double>(log_dt.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < log_dt.size(); ++i) {
        sx += log_dt[i];
        sy += log_err[i];
        sxx += log_dt[i] * log_dt[i];
        sxy += log_dt[i] * log_err[i];
    }
    est.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return est;
}

}  // namespace dualspin
