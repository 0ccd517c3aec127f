#include "dualspin/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace dualspin {

using nlohmann::json;

namespace {

void require_keys(const json& obj, const std::string& path, const std::set<std::string>& known) {
    for (const auto& [key, value] : obj.items()) {
        if (!known.count(key))
            throw ConfigError("unknown configuration key '" + path + key + "'");
    }
}

double get_num(const json& obj, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(std::string("key '") + key + "' must be a number");
    return v.get<double>();
}

std::int64_t get_int(const json& obj, const char* key, std::int64_t fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) throw ConfigError(std::string("key '") + key + "' must be an integer");
    return v.get<std::int64_t>();
}

bool get_bool(const json& obj, const char* key, bool fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_boolean()) throw ConfigError(std::string("key '") + key + "' must be a boolean");
    return v.get<bool>();
}

RunConfig from_json(const json& doc) {
    if (!doc.is_object()) throw ConfigError("configuration root must be a JSON object");
    require_keys(doc, "", {"system", "integration", "noise", "thresholds", "grid", "robustness"});

    RunConfig c;
    if (doc.contains("system")) {
        const json& s = doc.at("system");
        require_keys(s, "system.",
                     {"mean_larmor_hz", "dfreq_hz", "alpha_over_alpha_c", "t1_ms", "t2_ms", "m0",
                      "gamma_hz_per_nt", "tilt"});
        c.mean_larmor_hz = get_num(s, "mean_larmor_hz", c.mean_larmor_hz);
        c.dfreq_hz = get_num(s, "dfreq_hz", c.dfreq_hz);
        c.alpha_over_alpha_c = get_num(s, "alpha_over_alpha_c", c.alpha_over_alpha_c);
        c.t1_ms = get_num(s, "t1_ms", c.t1_ms);
        c.t2_ms = get_num(s, "t2_ms", c.t2_ms);
        c.m0 = get_num(s, "m0", c.m0);
        c.gamma_hz_per_nt = get_num(s, "gamma_hz_per_nt", c.gamma_hz_per_nt);
        c.tilt = get_num(s, "tilt", c.tilt);
    }
    if (doc.contains("integration")) {
        const json& s = doc.at("integration");
        require_keys(s, "integration.",
                     {"dt_s", "t_total_s", "t_transient_s", "sample_stride", "seed",
                      "allow_coarse_dt"});
        c.integration.dt_s = get_num(s, "dt_s", c.integration.dt_s);
        c.integration.t_total_s = get_num(s, "t_total_s", c.integration.t_total_s);
        c.integration.t_transient_s = get_num(s, "t_transient_s", c.integration.t_transient_s);
        c.integration.sample_stride = get_int(s, "sample_stride", c.integration.sample_stride);
        c.integration.seed = static_cast<std::uint64_t>(
            get_int(s, "seed", static_cast<std::int64_t>(c.integration.seed)));
        c.integration.allow_coarse_dt = get_bool(s, "allow_coarse_dt", c.integration.allow_coarse_dt);
    }
    if (doc.contains("noise")) {
        const json& s = doc.at("noise");
        require_keys(s, "noise.", {"enabled", "sigma_b_nt", "common_mode"});
        c.noise.enabled = get_bool(s, "enabled", c.noise.enabled);
        c.noise.sigma_b_nt = get_num(s, "sigma_b_nt", c.noise.sigma_b_nt);
        c.noise.common_mode = get_bool(s, "common_mode", c.noise.common_mode);
    }
    if (doc.contains("thresholds")) {
        const json& s = doc.at("thresholds");
        require_keys(s, "thresholds.",
                     {"epsilon_signal", "peak_rel_threshold", "peak_min_separation_hz",
                      "k_threshold", "freq_tolerance_hz", "chaos01"});
        c.thresholds.epsilon_signal = get_num(s, "epsilon_signal", c.thresholds.epsilon_signal);
        c.thresholds.peak_rel_threshold =
            get_num(s, "peak_rel_threshold", c.thresholds.peak_rel_threshold);
        c.thresholds.peak_min_separation_hz =
            get_num(s, "peak_min_separation_hz", c.thresholds.peak_min_separation_hz);
        c.thresholds.k_threshold = get_num(s, "k_threshold", c.thresholds.k_threshold);
        c.thresholds.freq_tolerance_hz =
            get_num(s, "freq_tolerance_hz", c.thresholds.freq_tolerance_hz);
        if (s.contains("chaos01")) {
            const json& ch = s.at("chaos01");
            require_keys(ch, "thresholds.chaos01.",
                         {"n_phases", "max_samples", "target_samples_per_period", "seed"});
            c.thresholds.chaos01.n_phases = static_cast<int>(
                get_int(ch, "n_phases", c.thresholds.chaos01.n_phases));
            c.thresholds.chaos01.max_samples = static_cast<std::size_t>(get_int(
                ch, "max_samples", static_cast<std::int64_t>(c.thresholds.chaos01.max_samples)));
            c.thresholds.chaos01.target_samples_per_period = get_num(
                ch, "target_samples_per_period", c.thresholds.chaos01.target_samples_per_period);
            c.thresholds.chaos01.seed = static_cast<std::uint64_t>(
                get_int(ch, "seed", static_cast<std::int64_t>(c.thresholds.chaos01.seed)));
        }
    }
    if (doc.contains("grid")) {
        const json& s = doc.at("grid");
        require_keys(s, "grid.", {"dfreq_hz", "alpha_ratio"});
        auto axis = [](const json& a, const std::string& path, double& lo, double& hi,
                       std::size_t& count) {
            require_keys(a, path, {"min", "max", "count"});
            lo = get_num(a, "min", lo);
            hi = get_num(a, "max", hi);
            count = static_cast<std::size_t>(get_int(a, "count", static_cast<std::int64_t>(count)));
        };
        if (s.contains("dfreq_hz"))
            axis(s.at("dfreq_hz"), "grid.dfreq_hz.", c.grid_dfreq_min_hz, c.grid_dfreq_max_hz,
                 c.grid_dfreq_count);
        if (s.contains("alpha_ratio"))
            axis(s.at("alpha_ratio"), "grid.alpha_ratio.", c.grid_alpha_min, c.grid_alpha_max,
                 c.grid_alpha_count);
    }
    if (doc.contains("robustness")) {
        const json& s = doc.at("robustness");
        require_keys(s, "robustness.", {"sigma_b_nt", "repeats", "points"});
        if (s.contains("sigma_b_nt")) {
            if (!s.at("sigma_b_nt").is_array())
                throw ConfigError("robustness.sigma_b_nt must be an array");
            c.robustness_sigma_b_nt.clear();
            for (const json& v : s.at("sigma_b_nt")) {
                if (!v.is_number()) throw ConfigError("robustness.sigma_b_nt entries must be numbers");
                c.robustness_sigma_b_nt.push_back(v.get<double>());
            }
        }
        c.robustness_repeats = static_cast<int>(get_int(s, "repeats", c.robustness_repeats));
        if (s.contains("points")) {
            if (!s.at("points").is_array()) throw ConfigError("robustness.points must be an array");
            c.robustness_points.clear();
            for (const json& v : s.at("points")) {
                require_keys(v, "robustness.points[].", {"name", "dfreq_hz", "alpha_over_alpha_c"});
                RobustnessPoint pt;
                if (!v.contains("name") || !v.at("name").is_string())
                    throw ConfigError("robustness points need a string 'name'");
                pt.name = v.at("name").get<std::string>();
                pt.dfreq_hz = get_num(v, "dfreq_hz", 0.0);
                pt.alpha_over_alpha_c = get_num(v, "alpha_over_alpha_c", 0.0);
                c.robustness_points.push_back(std::move(pt));
            }
        }
    }

    // Surface bad physical values now rather than at run time.
    try {
        c.system_params();
    } catch (const InvalidInput& e) {
        throw ConfigError(e.what());
    }
    if (c.robustness_repeats < 1) throw ConfigError("robustness.repeats must be >= 1");
    for (double sb : c.robustness_sigma_b_nt)
        if (sb < 0.0) throw ConfigError("robustness.sigma_b_nt entries must be >= 0");
    return c;
}

json apply_override(json doc, const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("override must look like section.key=value, got '" + spec + "'");
    const std::string path = spec.substr(0, eq);
    const std::string value = spec.substr(eq + 1);

    json* node = &doc;
    std::istringstream parts(path);
    std::string part;
    std::vector<std::string> keys;
    while (std::getline(parts, part, '.')) {
        if (part.empty()) throw ConfigError("override path has an empty component: '" + spec + "'");
        keys.push_back(part);
    }
    for (std::size_t i = 0; i + 1 < keys.size(); ++i) node = &(*node)[keys[i]];

    json parsed = json::parse(value, nullptr, false);
    if (parsed.is_discarded()) parsed = value;  // fall back to a plain string
    (*node)[keys.back()] = parsed;
    return doc;
}

}  // namespace

RunConfig::RunConfig() {
    // Stock robustness comparison: the limit-cycle and quasi-periodic
    // operating points under a shared noise ladder (nT), {0.05, 0.1, 0.2,
    // 0.4} x 16 x (limit-cycle splitting / gamma), plus a zero-noise row.
    robustness_points = {{"limit_cycle", 40.0, 16.0}, {"quasi_periodic", 220.0, 16.0}};
    robustness_sigma_b_nt = {0.0, 4.571428571428571, 9.142857142857142, 18.285714285714285,
                             36.57142857142857};
}

SystemParams RunConfig::system_params() const {
    return system_params(dfreq_hz, alpha_over_alpha_c);
}

SystemParams RunConfig::system_params(double dfreq, double ratio) const {
    return make_params(mean_larmor_hz, dfreq, ratio, t1_ms * 1e-3, t2_ms * 1e-3, m0,
                       gamma_hz_per_nt);
}

SweepGrid RunConfig::sweep_grid() const {
    SweepGrid grid;
    if (grid_dfreq_count < 2 || grid_alpha_count < 2)
        throw ConfigError("grid axes need at least 2 points each");
    grid.dfreq_hz = linspace(grid_dfreq_min_hz, grid_dfreq_max_hz, grid_dfreq_count);
    grid.alpha_ratio = linspace(grid_alpha_min, grid_alpha_max, grid_alpha_count);
    grid.base = system_params(0.0, 1.0);
    grid.tilt = tilt;
    return grid;
}

std::string RunConfig::canonical_json() const {
    json doc;
    doc["system"] = {{"mean_larmor_hz", mean_larmor_hz},
                     {"dfreq_hz", dfreq_hz},
                     {"alpha_over_alpha_c", alpha_over_alpha_c},
                     {"t1_ms", t1_ms},
                     {"t2_ms", t2_ms},
                     {"m0", m0},
                     {"gamma_hz_per_nt", gamma_hz_per_nt},
                     {"tilt", tilt}};
    doc["integration"] = {{"dt_s", integration.dt_s},
                          {"t_total_s", integration.t_total_s},
                          {"t_transient_s", integration.t_transient_s},
                          {"sample_stride", integration.sample_stride},
                          {"seed", integration.seed},
                          {"allow_coarse_dt", integration.allow_coarse_dt}};
    doc["noise"] = {{"enabled", noise.enabled},
                    {"sigma_b_nt", noise.sigma_b_nt},
                    {"common_mode", noise.common_mode}};
    doc["thresholds"] = {
        {"epsilon_signal", thresholds.epsilon_signal},
        {"peak_rel_threshold", thresholds.peak_rel_threshold},
        {"peak_min_separation_hz", thresholds.peak_min_separation_hz},
        {"k_threshold", thresholds.k_threshold},
        {"freq_tolerance_hz", thresholds.freq_tolerance_hz},
        {"chaos01",
         {{"n_phases", thresholds.chaos01.n_phases},
          {"max_samples", thresholds.chaos01.max_samples},
          {"target_samples_per_period", thresholds.chaos01.target_samples_per_period},
          {"seed", thresholds.chaos01.seed}}}};
    doc["grid"] = {
        {"dfreq_hz",
         {{"min", grid_dfreq_min_hz}, {"max", grid_dfreq_max_hz}, {"count", grid_dfreq_count}}},
        {"alpha_ratio",
         {{"min", grid_alpha_min}, {"max", grid_alpha_max}, {"count", grid_alpha_count}}}};
    json pts = json::array();
    for (const auto& pt : robustness_points)
        pts.push_back({{"name", pt.name},
                       {"dfreq_hz", pt.dfreq_hz},
                       {"alpha_over_alpha_c", pt.alpha_over_alpha_c}});
    doc["robustness"] = {{"sigma_b_nt", robustness_sigma_b_nt},
                         {"repeats", robustness_repeats},
                         {"points", pts}};
    return doc.dump();
}

RunConfig parse_config(const std::string& json_text) {
    json doc = json::parse(json_text, nullptr, false);
    if (doc.is_discarded()) throw ConfigError("configuration is not valid JSON");
    return from_json(doc);
}

RunConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    json doc = json::parse(ss.str(), nullptr, false);
    if (doc.is_discarded())
        throw ConfigError("config file " + path.string() + " is not valid JSON");
    for (const auto& ov : overrides) doc = apply_override(std::move(doc), ov);
    return from_json(doc);
}

}  // namespace dualspin
