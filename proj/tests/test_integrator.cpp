#include <doctest.h>

#include <cmath>
#include <complex>

#include "dualspin/integrator.hpp"
#include "helpers.hpp"

using namespace dualspin;

TEST_SUITE_BEGIN("integrator");

namespace {

// Independent closed-form oracle for alpha = 0 (written out here, not
// shared with the library): M+ = M+(0) exp((-i w - 1/T2) t),
// Mz = M0 + (Mz(0) - M0) exp(-t/T1).
SpinState linear_oracle(const SystemParams& p, const SpinState& init, double t) {
    SpinState out;
    for (int c = 0; c < 2; ++c) {
        const std::complex<double> m0(init.m[3 * c], init.m[3 * c + 1]);
        const std::complex<double> mt =
            m0 * std::exp(std::complex<double>(-t / p.t2_s, -p.cells[c].larmor_rad_s * t));
        out.m[3 * c] = mt.real();
        out.m[3 * c + 1] = mt.imag();
        out.m[3 * c + 2] = p.m0 + (init.m[3 * c + 2] - p.m0) * std::exp(-t / p.t1_s);
    }
    return out;
}

}  // namespace

TEST_CASE("integrated trajectory matches the damped-precession closed form") {
    SystemParams p = testutil::anchor_params(0.0, 1.0);
    p.alpha = 0.0;
    p.cells[0].larmor_rad_s = two_pi * 300.0;
    p.cells[1].larmor_rad_s = two_pi * 150.0;

    SpinState init;
    init.m = {0.04, 0.02, 0.3, -0.03, 0.05, 0.6};

    IntegrationConfig cfg;
    cfg.dt_s = 1.0e-5;
    cfg.t_total_s = 0.02;
    cfg.t_transient_s = 0.0;
    cfg.sample_stride = 10;

    const Trajectory traj = integrate(p, init, cfg);
    REQUIRE(traj.size() == 201);
    double max_err = 0.0;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const SpinState exact = linear_oracle(p, init, traj.time_at(k));
        for (int i = 0; i < 6; ++i)
            max_err = std::max(max_err, std::abs(traj.states[k].m[i] - exact.m[i]));
    }
    CHECK(max_err < 1e-10);
}

TEST_CASE("trajectory invariants: mx column and sample spacing") {
    SystemParams p = testutil::anchor_params(40.0, 16.0);
    IntegrationConfig cfg;
    cfg.t_total_s = 0.05;
    cfg.t_transient_s = 0.01;
    const Trajectory traj = integrate(p, default_initial_state(p, 0.1), cfg);
    REQUIRE(traj.size() >= 2);
    CHECK(traj.dt_sample_s == cfg.dt_s * static_cast<double>(cfg.sample_stride));
    for (std::size_t k = 0; k < traj.size(); ++k)
        CHECK(traj.mx[k] == observable_mx(traj.states[k]));
    CHECK(traj.t0_s >= cfg.t_transient_s - 1e-12);
}

TEST_CASE("exact pump equilibrium stays bitwise constant") {
    SystemParams p = testutil::anchor_params(110.0, 20.0);
    SpinState fp;
    fp.m = {0.0, 0.0, p.m0, 0.0, 0.0, p.m0};
    IntegrationConfig cfg;
    cfg.t_total_s = 0.01;
    cfg.t_transient_s = 0.0;
    const Trajectory traj = integrate(p, fp, cfg);
    for (const auto& s : traj.states)
        for (int i = 0; i < 6; ++i) CHECK(s.m[i] == fp.m[i]);
}

TEST_CASE("transient discard equals the suffix of the full run") {
    SystemParams p = testutil::anchor_params(40.0, 16.0);
    const SpinState init = default_initial_state(p, 0.1);
    IntegrationConfig full;
    full.t_total_s = 0.04;
    full.t_transient_s = 0.0;
    IntegrationConfig cut = full;
    cut.t_transient_s = 0.017;

    const Trajectory a = integrate(p, init, full);
    const Trajectory b = integrate(p, init, cut);
    REQUIRE(b.size() > 2);
    REQUIRE(a.size() > b.size());
    const std::size_t offset = a.size() - b.size();
    CHECK(a.time_at(offset) == doctest::Approx(b.t0_s).epsilon(1e-15));
    for (std::size_t k = 0; k < b.size(); ++k)
        for (int i = 0; i < 6; ++i) CHECK(a.states[offset + k].m[i] == b.states[k].m[i]);
}

TEST_CASE("integration is deterministic, including under noise") {
    SystemParams p = testutil::anchor_params(220.0, 16.0);
    const SpinState init = default_initial_state(p, 0.1);
    IntegrationConfig cfg;
    cfg.t_total_s = 0.05;
    cfg.t_transient_s = 0.0;
    cfg.seed = 1234;

    SUBCASE("noiseless") {
        const Trajectory a = integrate(p, init, cfg);
        const Trajectory b = integrate(p, init, cfg);
        REQUIRE(a.size() == b.size());
        for (std::size_t k = 0; k < a.size(); ++k)
            for (int i = 0; i < 6; ++i) CHECK(a.states[k].m[i] == b.states[k].m[i]);
    }
    SUBCASE("noisy, same seed") {
        NoiseConfig nz;
        nz.enabled = true;
        nz.sigma_b_nt = 5.0;
        const Trajectory a = integrate_noisy(p, init, cfg, nz);
        const Trajectory b = integrate_noisy(p, init, cfg, nz);
        REQUIRE(a.size() == b.size());
        for (std::size_t k = 0; k < a.size(); ++k)
            for (int i = 0; i < 6; ++i) CHECK(a.states[k].m[i] == b.states[k].m[i]);
    }
    SUBCASE("zero noise amplitude is bit-identical to the noiseless path") {
        NoiseConfig nz;
        nz.enabled = true;
        nz.sigma_b_nt = 0.0;
        const Trajectory a = integrate(p, init, cfg);
        const Trajectory b = integrate_noisy(p, init, cfg, nz);
        REQUIRE(a.size() == b.size());
        for (std::size_t k = 0; k < a.size(); ++k)
            for (int i = 0; i < 6; ++i) CHECK(a.states[k].m[i] == b.states[k].m[i]);
    }
    SUBCASE("noise requires the enabled flag") {
        NoiseConfig nz;
        nz.enabled = false;
        CHECK_THROWS_AS(integrate_noisy(p, init, cfg, nz), InvalidInput);
    }
}

TEST_CASE("deviation from the clean run grows with the noise amplitude") {
    SystemParams p = testutil::anchor_params(40.0, 16.0);
    const SpinState init = default_initial_state(p, 0.1);
    IntegrationConfig cfg;
    cfg.t_total_s = 0.4;
    cfg.t_transient_s = 0.0;
    cfg.seed = 77;
    const Trajectory clean = integrate(p, init, cfg);

    double prev = -1.0;
    for (double sigma : {0.5, 2.0, 8.0}) {
        NoiseConfig nz;
        nz.enabled = true;
        nz.sigma_b_nt = sigma;
        const Trajectory noisy = integrate_noisy(p, init, cfg, nz);
        double var = 0.0;
        for (std::size_t k = 0; k < clean.size(); ++k) {
            const double d = noisy.mx[k] - clean.mx[k];
            var += d * d;
        }
        var /= static_cast<double>(clean.size());
        CHECK(var > prev);
        prev = var;
    }
}

TEST_CASE("per-cell magnetization stays within the stated bound") {
    for (auto [df, ratio] : {std::pair{40.0, 16.0}, {220.0, 16.0}, {110.0, 20.0}}) {
        SystemParams p = testutil::anchor_params(df, ratio);
        const SpinState init = default_initial_state(p, 0.1);
        IntegrationConfig cfg;
        cfg.t_total_s = 0.5;
        cfg.t_transient_s = 0.0;
        const Trajectory traj = integrate(p, init, cfg);
        const double bound =
            std::sqrt(2.0) * std::max({init.norm(0), init.norm(1), p.m0}) + 1e-9;
        for (const auto& s : traj.states) {
            CHECK(s.norm(0) <= bound);
            CHECK(s.norm(1) <= bound);
        }
    }
}

TEST_CASE("step-size guard trips without the override flag") {
    SystemParams p = testutil::anchor_params(0.0, 16.0, 2500.0);
    IntegrationConfig cfg;
    cfg.dt_s = 1.0e-5;  // 0.157 rad/step at 2.5 kHz
    cfg.t_total_s = 0.01;
    cfg.t_transient_s = 0.0;
    CHECK_THROWS_AS(integrate(p, default_initial_state(p, 0.1), cfg), InvalidInput);
    cfg.allow_coarse_dt = true;
    CHECK_NOTHROW(integrate(p, default_initial_state(p, 0.1), cfg));
}

TEST_CASE("a diverging run raises a blow-up error with its time, not garbage") {
    SystemParams p = testutil::anchor_params(110.0, 1.0e6);
    IntegrationConfig cfg;
    cfg.dt_s = 1.0e-4;
    cfg.t_total_s = 0.5;
    cfg.t_transient_s = 0.0;
    cfg.allow_coarse_dt = true;
    try {
        integrate(p, default_initial_state(p, 0.1), cfg);
        FAIL("expected BlowUpError");
    } catch (const BlowUpError& e) {
        CHECK(e.time_s() > 0.0);
        CHECK(e.time_s() <= cfg.t_total_s);
    }
}

TEST_CASE("with relaxation disabled and alpha = 0 the magnitude is conserved") {
    SystemParams p = testutil::anchor_params(0.0, 1.0);
    p.alpha = 0.0;
    p.t1_s = std::numeric_limits<double>::infinity();
    p.t2_s = std::numeric_limits<double>::infinity();
    p.cells[0].larmor_rad_s = two_pi * 100.0;
    p.cells[1].larmor_rad_s = two_pi * 100.0;

    SpinState init;
    init.m = {0.2, 0.1, 0.4, -0.15, 0.2, 0.35};
    IntegrationConfig cfg;
    cfg.dt_s = 1.0e-5;
    cfg.t_total_s = 1.0;  // 1e5 steps
    cfg.t_transient_s = 0.0;
    cfg.sample_stride = 1000;
    const Trajectory traj = integrate(p, init, cfg);
    for (int c = 0; c < 2; ++c) {
        const double n0 = init.norm(c);
        for (const auto& s : traj.states)
            CHECK(std::abs(s.norm(c) - n0) / n0 < 1e-8);
    }
}

TEST_CASE("convergence order of the integrator is four") {
    SystemParams p = testutil::anchor_params(0.0, 1.0);
    p.alpha = 0.0;
    p.cells[0].larmor_rad_s = two_pi * 250.0;
    p.cells[1].larmor_rad_s = two_pi * 250.0;
    const SpinState init = default_initial_state(p, 0.1);

    SUBCASE("slope in the fourth-order band") {
        const double dts[] = {4e-5, 2e-5, 1e-5};
        const OrderEstimate est = convergence_order(p, init, dts, 5.0e-3);
        REQUIRE(est.conclusive);
        CHECK(est.slope > 3.7);
        CHECK(est.slope < 4.3);
    }
    SUBCASE("preconditions") {
        const double one[] = {1e-5};
        CHECK_THROWS_AS(convergence_order(p, init, one, 5e-3), InvalidInput);
        const double increasing[] = {1e-5, 2e-5, 4e-5};
        CHECK_THROWS_AS(convergence_order(p, init, increasing, 5e-3), InvalidInput);
        SystemParams nonlinear = testutil::anchor_params(40.0, 16.0);
        const double dts[] = {4e-5, 2e-5, 1e-5};
        CHECK_THROWS_AS(convergence_order(nonlinear, init, dts, 5e-3), InvalidInput);
    }
    SUBCASE("errors at the floating-point floor are flagged inconclusive") {
        SystemParams frozen = p;
        frozen.cells[0].larmor_rad_s = 1e-3;
        frozen.cells[1].larmor_rad_s = 1e-3;
        frozen.t1_s = std::numeric_limits<double>::infinity();
        frozen.t2_s = std::numeric_limits<double>::infinity();
        const double dts[] = {4e-5, 2e-5, 1e-5};
        const OrderEstimate est = convergence_order(frozen, init, dts, 5e-3);
        CHECK_FALSE(est.conclusive);
    }
}

TEST_CASE("integration config validation") {
    SystemParams p = testutil::anchor_params(40.0, 16.0);
    IntegrationConfig cfg;
    cfg.t_transient_s = 5.0;  // >= t_total
    CHECK_THROWS_AS(cfg.validate(p), InvalidInput);
    cfg = IntegrationConfig{};
    cfg.sample_stride = 0;
    CHECK_THROWS_AS(cfg.validate(p), InvalidInput);
    cfg = IntegrationConfig{};
    cfg.dt_s = -1.0;
    CHECK_THROWS_AS(cfg.validate(p), InvalidInput);
}

TEST_CASE("a sampling plan that cannot produce two samples is rejected") {
    SystemParams p = testutil::anchor_params(40.0, 16.0);
    IntegrationConfig cfg;
    cfg.t_total_s = 0.01;
    cfg.t_transient_s = 0.0099;
    cfg.sample_stride = 4000;  // only the final step would be recorded
    CHECK_THROWS_AS(integrate(p, default_initial_state(p, 0.1), cfg), InvalidInput);
}

TEST_SUITE_END();
