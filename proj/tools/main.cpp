#include <cstdio>
#include <exception>

#include <CLI11.hpp>

#include "commands.hpp"
#include "dualspin/errors.hpp"
#include "dualspin/version.hpp"

using dualspin::cli::CommonOpts;

int main(int argc, char** argv) {
    CLI::App app{"dualspin - feedback-coupled dual-cell spin dynamics simulator"};
    app.set_version_flag("--version", dualspin::version_string);
    app.require_subcommand(1);

    CommonOpts opts;
    std::uint64_t seed_flag = 0;
    bool seed_given = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("-c,--config", opts.config_path, "run configuration (JSON)")->required();
        cmd->add_option("-o,--out", opts.out_dir, "output directory");
        cmd->add_option("--seed", seed_flag, "override integration.seed")
            ->each([&](const std::string&) { seed_given = true; });
        cmd->add_option("--override", opts.overrides,
                        "config override as section.key=value (repeatable)");
        cmd->add_option("-w,--workers", opts.workers, "parallel workers (sweep only)")
            ->check(CLI::Range(1, 512));
        cmd->add_flag("--fresh", opts.fresh, "discard any existing checkpoint (sweep only)");
        return cmd;
    };

    auto* simulate = add_common(app.add_subcommand("simulate",
                                                   "integrate one operating point and export "
                                                   "trajectory, spectrum, section and summary"));
    auto* sweep =
        add_common(app.add_subcommand("sweep", "map the (dfreq, gain) plane into a phase diagram"));
    auto* robustness = add_common(
        app.add_subcommand("robustness", "Q-vs-noise comparison of configured operating points"));
    auto* chaos = app.add_subcommand("chaos-test", "0-1 chaos statistic K of a series file");
    std::filesystem::path chaos_input;
    chaos->add_option("input", chaos_input, "single-column or (t, value) table")->required();
    chaos->add_option("--seed", seed_flag, "seed for the test's random phases");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        app.exit(e);
        return 2;
    }

    if (seed_given) opts.seed = seed_flag;

    try {
        if (simulate->parsed()) {
            if (opts.out_dir.empty()) opts.out_dir = "out/simulate";
            return dualspin::cli::cmd_simulate(opts);
        }
        if (sweep->parsed()) {
            if (opts.out_dir.empty()) opts.out_dir = "out/sweep";
            return dualspin::cli::cmd_sweep(opts);
        }
        if (robustness->parsed()) {
            if (opts.out_dir.empty()) opts.out_dir = "out/robustness";
            return dualspin::cli::cmd_robustness(opts);
        }
        if (chaos->parsed()) return dualspin::cli::cmd_chaos_test(chaos_input, seed_flag);
    } catch (const dualspin::BlowUpError& e) {
        std::fprintf(stderr, "dualspin: numerical failure: %s\n", e.what());
        return 3;
    } catch (const dualspin::ConfigError& e) {
        std::fprintf(stderr, "dualspin: %s\n", e.what());
        return 2;
    } catch (const dualspin::CheckpointMismatch& e) {
        std::fprintf(stderr, "dualspin: %s (use --fresh to discard it)\n", e.what());
        return 2;
    } catch (const dualspin::InvalidInput& e) {
        std::fprintf(stderr, "dualspin: invalid configuration: %s\n", e.what());
        return 2;
    } catch (const dualspin::InsufficientData& e) {
        std::fprintf(stderr, "dualspin: %s\n", e.what());
        return 2;
    } catch (const dualspin::UndefinedStatistic& e) {
        std::fprintf(stderr, "dualspin: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "dualspin: internal error: %s\n", e.what());
        return 1;
    }
    return 0;
}
