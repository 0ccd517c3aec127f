#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace dualspin::cli {

struct CommonOpts {
    std::filesystem::path config_path;
    std::filesystem::path out_dir;
    std::optional<std::uint64_t> seed;
    int workers = 8;
    bool fresh = false;
    std::vector<std::string> overrides;
};

int cmd_simulate(const CommonOpts& opts);
int cmd_sweep(const CommonOpts& opts);
int cmd_robustness(const CommonOpts& opts);
int cmd_chaos_test(const std::filesystem::path& input, std::uint64_t seed);

}  // namespace dualspin::cli
