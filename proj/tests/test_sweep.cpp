#include <doctest.h>

#include <bit>
#include <fstream>
#include <sstream>

#include "dualspin/sweep.hpp"
#include "helpers.hpp"

using namespace dualspin;

TEST_SUITE_BEGIN("sweep");

namespace {

IntegrationConfig quick_cfg() {
    IntegrationConfig cfg;
    cfg.t_total_s = 2.0;
    cfg.t_transient_s = 0.5;
    return cfg;
}

bool same_point(const PointRecord& a, const PointRecord& b) {
    if (a.label.regime != b.label.regime) return false;
    if (a.label.peak_count != b.label.peak_count) return false;
    if (a.label.k_statistic.has_value() != b.label.k_statistic.has_value()) return false;
    if (a.label.k_statistic &&
        std::bit_cast<std::uint64_t>(*a.label.k_statistic) !=
            std::bit_cast<std::uint64_t>(*b.label.k_statistic))
        return false;
    return std::bit_cast<std::uint64_t>(a.label.dominant_freq_hz) ==
           std::bit_cast<std::uint64_t>(b.label.dominant_freq_hz);
}

std::size_t count_lines(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) ++n;
    return n;
}

}  // namespace

TEST_CASE("grid point construction preserves the mean and applies the split") {
    SweepGrid grid = default_grid();
    grid.validate();
    REQUIRE(grid.rows() == 31);
    REQUIRE(grid.cols() == 25);
    CHECK(grid.dfreq_hz.front() == 0.0);
    CHECK(grid.dfreq_hz.back() == 300.0);
    CHECK(grid.alpha_ratio.front() == 0.5);
    CHECK(grid.alpha_ratio.back() == 24.0);

    const SystemParams p = grid.params_at(11, 20);  // df = 110
    CHECK(p.mean_omega() == doctest::Approx(grid.base.mean_omega()).epsilon(1e-14));
    CHECK(p.delta_omega() == doctest::Approx(two_pi * 110.0).epsilon(1e-12));
    CHECK(p.alpha == doctest::Approx(grid.alpha_ratio[20] * critical_alpha(p)).epsilon(1e-14));
}

TEST_CASE("linspace hits both endpoints exactly") {
    const auto v = linspace(0.5, 24.0, 25);
    REQUIRE(v.size() == 25);
    CHECK(v.front() == 0.5);
    CHECK(v.back() == 24.0);
    for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i] > v[i - 1]);
}

TEST_CASE("grid validation") {
    SweepGrid grid = default_grid();
    grid.dfreq_hz = {10.0, 10.0};
    CHECK_THROWS_AS(grid.validate(), InvalidInput);
    grid = default_grid();
    grid.alpha_ratio.clear();
    CHECK_THROWS_AS(grid.validate(), InvalidInput);
}

TEST_CASE("a single-point grid classifies the limit-cycle operating point") {
    SweepGrid grid;
    grid.dfreq_hz = {40.0};
    grid.alpha_ratio = {16.0};
    grid.base = make_params(5000.0, 0.0, 1.0);

    SweepOptions opt;
    opt.integration = quick_cfg();
    const PhaseDiagram pd = run_sweep(grid, opt);
    REQUIRE(pd.points.size() == 1);
    CHECK(pd.at(0, 0).label.regime == Regime::LimitCycle);
}

TEST_CASE("an entirely subcritical grid is all NoSignal") {
    SweepGrid grid;
    grid.dfreq_hz = {0.0, 150.0};
    grid.alpha_ratio = {0.5, 0.8};
    grid.base = make_params(5000.0, 0.0, 1.0);

    SweepOptions opt;
    opt.integration = quick_cfg();
    const PhaseDiagram pd = run_sweep(grid, opt);
    for (const auto& pt : pd.points) CHECK(pt.label.regime == Regime::NoSignal);
}

TEST_CASE("results are identical for any worker count") {
    SweepGrid grid;
    grid.dfreq_hz = {0.0, 220.0};
    grid.alpha_ratio = {0.5, 16.0};
    grid.base = make_params(5000.0, 0.0, 1.0);

    SweepOptions opt;
    opt.integration = quick_cfg();
    opt.seed = 5;
    opt.workers = 1;
    const PhaseDiagram a = run_sweep(grid, opt);
    opt.workers = 4;
    const PhaseDiagram b = run_sweep(grid, opt);
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) CHECK(same_point(a.points[i], b.points[i]));

    // the mixed grid exercises both branches of the cascade
    CHECK(a.at(0, 0).label.regime == Regime::NoSignal);
    CHECK(a.at(0, 1).label.regime == Regime::LimitCycle);
    CHECK(a.at(1, 1).label.regime == Regime::QuasiPeriodic);
}

TEST_CASE("interrupted checkpoints resume to identical results") {
    testutil::TempDir tmp("ckpt");
    const auto ckpt = tmp.path() / "sweep.checkpoint";

    SweepGrid grid;
    grid.dfreq_hz = {0.0, 220.0};
    grid.alpha_ratio = {0.5, 16.0};
    grid.base = make_params(5000.0, 0.0, 1.0);

    SweepOptions opt;
    opt.integration = quick_cfg();
    opt.seed = 9;
    opt.workers = 2;
    opt.checkpoint_path = ckpt;

    const PhaseDiagram full = run_sweep(grid, opt);
    REQUIRE(std::filesystem::exists(ckpt));
    REQUIRE(count_lines(ckpt) == 5);  // header + 4 records

    SUBCASE("resume after truncation") {
        // keep the header and the first two records only
        std::ifstream in(ckpt);
        std::stringstream keep;
        std::string line;
        for (int i = 0; i < 3 && std::getline(in, line); ++i) keep << line << "\n";
        in.close();
        std::ofstream(ckpt, std::ios::trunc) << keep.str();

        const PhaseDiagram resumed = run_sweep(grid, opt);
        for (std::size_t i = 0; i < full.points.size(); ++i)
            CHECK(same_point(full.points[i], resumed.points[i]));
        CHECK(count_lines(ckpt) == 5);
    }
    SUBCASE("a complete checkpoint is loaded without recomputation") {
        const PhaseDiagram again = run_sweep(grid, opt);
        for (std::size_t i = 0; i < full.points.size(); ++i)
            CHECK(same_point(full.points[i], again.points[i]));
    }
    SUBCASE("a checkpoint for different options is rejected") {
        SweepOptions other = opt;
        other.seed = 10;
        CHECK_THROWS_AS(run_sweep(grid, other), CheckpointMismatch);
        other.fresh = true;
        CHECK_NOTHROW(run_sweep(grid, other));
    }
    SUBCASE("a torn trailing record is ignored on resume") {
        std::ofstream(ckpt, std::ios::app) << "1 1 quasi_periodic 0x1.9";
        const PhaseDiagram resumed = run_sweep(grid, opt);
        for (std::size_t i = 0; i < full.points.size(); ++i)
            CHECK(same_point(full.points[i], resumed.points[i]));
    }
}

TEST_CASE("integration blow-ups are recorded as Failed without aborting") {
    SweepGrid grid;
    grid.dfreq_hz = {0.0, 10.0};
    grid.alpha_ratio = {1.0e6, 2.0e6};
    grid.base = make_params(5000.0, 0.0, 1.0);

    SweepOptions opt;
    opt.integration.dt_s = 1.0e-4;
    opt.integration.t_total_s = 0.02;
    opt.integration.t_transient_s = 0.0;
    opt.integration.allow_coarse_dt = true;
    const PhaseDiagram pd = run_sweep(grid, opt);
    for (const auto& pt : pd.points) CHECK(pt.label.regime == Regime::Failed);
}

TEST_CASE("boundary extraction") {
    SweepGrid grid;
    grid.dfreq_hz = {0.0, 10.0, 20.0};
    grid.alpha_ratio = {1.0, 2.0};
    grid.base = make_params(5000.0, 0.0, 1.0);

    PhaseDiagram pd;
    pd.grid = grid;
    pd.points.resize(6);

    SUBCASE("uniform diagram has no boundaries") {
        for (auto& pt : pd.points) pt.label.regime = Regime::LimitCycle;
        CHECK(boundary_extract(pd).empty());
    }
    SUBCASE("a half-and-half split yields one straight boundary") {
        // rows 0..2 over dfreq, cols over gain; split along the gain axis
        for (std::size_t i = 0; i < 3; ++i) {
            pd.points[i * 2 + 0].label.regime = Regime::LimitCycle;
            pd.points[i * 2 + 1].label.regime = Regime::QuasiPeriodic;
        }
        const auto edges = boundary_extract(pd);
        REQUIRE(edges.size() == 3);  // one edge per dfreq row
        for (const auto& e : edges) {
            CHECK(e.i1 == e.i2);
            CHECK(e.j1 == 0);
            CHECK(e.j2 == 1);
            CHECK(e.a == Regime::LimitCycle);
            CHECK(e.b == Regime::QuasiPeriodic);
        }
        // deterministic order: sorted by indices
        CHECK(edges[0].i1 < edges[1].i1);
        CHECK(edges[1].i1 < edges[2].i1);
    }
}

TEST_SUITE_END();
