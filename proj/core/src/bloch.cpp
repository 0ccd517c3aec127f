#include "dualspin/bloch.hpp"

#include <string>

namespace dualspin {

void SystemParams::validate() const {
    auto positive = [](double v, const char* name) {
        if (std::isnan(v) || v <= 0.0)
            throw InvalidInput(std::string(name) + " must be positive");
    };
    positive(t1_s, "t1_s");
    positive(t2_s, "t2_s");
    positive(m0, "m0");
    positive(gamma_rad_s_nt, "gamma_rad_s_nt");
    if (!std::isfinite(m0) || !std::isfinite(gamma_rad_s_nt))
        throw InvalidInput("m0 and gamma_rad_s_nt must be finite");
    if (!std::isfinite(alpha)) throw InvalidInput("alpha must be finite");
    for (const auto& c : cells)
        if (!std::isfinite(c.larmor_rad_s))
            throw InvalidInput("cell Larmor frequency must be finite");
}

SystemParams make_params(double mean_larmor_hz, double dfreq_hz, double alpha_over_critical,
                         double t1_s, double t2_s, double m0, double gamma_hz_per_nt) {
    SystemParams p;
    p.cells[0].larmor_rad_s = two_pi * (mean_larmor_hz + 0.5 * dfreq_hz);
    p.cells[1].larmor_rad_s = two_pi * (mean_larmor_hz - 0.5 * dfreq_hz);
    p.t1_s = t1_s;
    p.t2_s = t2_s;
    p.m0 = m0;
    p.gamma_rad_s_nt = two_pi * gamma_hz_per_nt;
    p.alpha = alpha_over_critical * critical_alpha(p);
    p.validate();
    return p;
}

SpinState vector_field(const SpinState& s, const SystemParams& p) {
    if (!s.all_finite()) throw InvalidInput("vector_field: non-finite state component");
    SpinState d;
    detail::bloch_rhs(s.m, p, d.m);
    return d;
}

SpinState default_initial_state(const SystemParams& p, double tilt) {
    if (!(tilt > 0.0) || tilt > 0.5)
        throw InvalidInput("tilt must be in (0, 0.5]");
    SpinState s;
    const double mt = tilt * p.m0;
    const double mz = p.m0 * std::sqrt(1.0 - tilt * tilt);
    s.m = {mt, 0.0, mz, mt, 0.0, mz};
    return s;
}

}  // namespace dualspin
