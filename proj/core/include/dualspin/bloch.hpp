#pragma once

#include <array>
#include <cmath>
#include <numbers>

#include "dualspin/errors.hpp"

namespace dualspin {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// One vapor cell: its Larmor angular frequency w = gamma * B0_z.
struct CellParams {
    double larmor_rad_s = 0.0;
};

/// Physical parameters of the feedback-coupled dual-cell system.
///
/// All frequencies are stored as angular frequencies in rad/s. The
/// gyromagnetic ratio is commonly quoted in Hz/nT; it is stored here in
/// rad/(s*nT), i.e. 2*pi times the Hz/nT figure. t1_s and t2_s may be
/// +infinity, which disables the corresponding relaxation term.
struct SystemParams {
    std::array<CellParams, 2> cells{};
    double alpha = 0.0;  ///< feedback coefficient, rad/s per unit magnetization
    double t1_s = 5.0e-3;
    double t2_s = 2.0e-3;
    double m0 = 0.5;
    double gamma_rad_s_nt = two_pi * 7.0;

    double delta_omega() const { return cells[0].larmor_rad_s - cells[1].larmor_rad_s; }
    double mean_omega() const { return 0.5 * (cells[0].larmor_rad_s + cells[1].larmor_rad_s); }
    double max_abs_omega() const {
        return std::max(std::abs(cells[0].larmor_rad_s), std::abs(cells[1].larmor_rad_s));
    }

    /// Throws InvalidInput if any invariant is violated.
    void validate() const;
};

/// Builds SystemParams from the mean Larmor frequency and cell splitting,
/// both in Hz, with the gain expressed as a multiple of the critical
/// feedback coefficient 1/(T2*M0). Cell 1 sits above the mean, cell 2 below,
/// so w1 - w2 = 2*pi*dfreq_hz while the mean stays fixed.
SystemParams make_params(double mean_larmor_hz, double dfreq_hz, double alpha_over_critical,
                         double t1_s = 5.0e-3, double t2_s = 2.0e-3, double m0 = 0.5,
                         double gamma_hz_per_nt = 7.0);

/// Instantaneous magnetization of both ensembles,
/// ordered (Mx1, My1, Mz1, Mx2, My2, Mz2).
struct SpinState {
    std::array<double, 6> m{};

    double mx(int cell) const { return m[3 * cell]; }
    double my(int cell) const { return m[3 * cell + 1]; }
    double mz(int cell) const { return m[3 * cell + 2]; }

    /// Per-cell magnetization magnitude |M_i|.
    double norm(int cell) const {
        return std::sqrt(mx(cell) * mx(cell) + my(cell) * my(cell) + mz(cell) * mz(cell));
    }

    bool all_finite() const {
        for (double v : m)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

/// The probe observable: Mx1 + Mx2.
inline double observable_mx(const SpinState& s) { return s.m[0] + s.m[3]; }

inline double total_my(const SpinState& s) { return s.m[1] + s.m[4]; }
inline double total_mz(const SpinState& s) { return s.m[2] + s.m[5]; }

namespace detail {
/// Right-hand side of the coupled Bloch equations, no input checking.
/// The feedback field enters through the shared observable Mx1 + Mx2.
inline void bloch_rhs(const std::array<double, 6>& m, const SystemParams& p,
                      std::array<double, 6>& dm) {
    const double mx_total = m[0] + m[3];
    const double inv_t1 = 1.0 / p.t1_s;
    const double inv_t2 = 1.0 / p.t2_s;
    for (int c = 0; c < 2; ++c) {
        const double w = p.cells[c].larmor_rad_s;
        const double mx = m[3 * c];
        const double my = m[3 * c + 1];
        const double mz = m[3 * c + 2];
        dm[3 * c] = w * my + p.alpha * mx_total * mz - mx * inv_t2;
        dm[3 * c + 1] = -w * mx - my * inv_t2;
        dm[3 * c + 2] = -p.alpha * mx_total * mx + (p.m0 - mz) * inv_t1;
    }
}
}  // namespace detail

/// Time derivative of the state under the coupled nonlinear Bloch equations.
/// Throws InvalidInput if the state contains non-finite components.
SpinState vector_field(const SpinState& s, const SystemParams& p);

/// Critical feedback coefficient 1/(T2*M0) above which the transverse
/// magnetization self-oscillates instead of decaying.
inline double critical_alpha(const SystemParams& p) { return 1.0 / (p.t2_s * p.m0); }

/// Both cells tilted by the same small transverse angle:
/// (tilt*M0, 0, M0*sqrt(1-tilt^2)). The exact pump equilibrium (tilt = 0)
/// is a fixed point and never self-starts, so tilt must be positive.
/// Requires 0 < tilt <= 0.5.
SpinState default_initial_state(const SystemParams& p, double tilt = 0.1);

}  // namespace dualspin
