#ifndef WPCN_CONFIG_HPP
#define WPCN_CONFIG_HPP

// Flat key-value run configuration.  One `key = value` per line, `#` starts a
// comment, lists are comma separated (optional surrounding brackets).  A JSON
// document produced by the CLI is accepted too: its "config" object is read
// back with the same keys.  Every dB/dBm value is converted here; the echo is
// written in linear units only.

#include <wpcn/common_solver.hpp>
#include <wpcn/controls.hpp>
#include <wpcn/errors.hpp>
#include <wpcn/model.hpp>
#include <wpcn/simulation.hpp>

#include <json.hpp>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace wpcn {

struct RunConfig {
    std::optional<std::vector<double>> gamma; // direct effective SNRs, linear
    bool has_scenario = false;                // distances_m given
    ScenarioConfig scenario;
    SolverControls controls;
    std::optional<double> r_max_init;
    std::vector<double> weights;
    std::vector<double> rate_profile;
    int n_weights = 64;
    std::vector<double> alphas{2.0, 2.5, 3.0, 3.5, 4.0};
    std::vector<int> k_values{1, 2, 5, 10};
    double max_distance = 10.0;
    std::vector<Scheme> schemes; // empty: command default

    std::size_t users() const { return gamma ? gamma->size() : scenario.users(); }

    /// Network for the solve commands.  A physical scenario uses trial 0 of
    /// its channel model (deterministic without fading).
    NetworkInstance instance() const {
        if (gamma)
            return NetworkInstance(*gamma);
        return effective_snr(scenario.physical, draw_channels(scenario, 0));
    }

    nlohmann::ordered_json echo() const;
};

namespace detail {

inline std::string trim(std::string s) {
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string::npos)
        return {};
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

inline const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys{
        "gamma_db", "gamma_linear", "distances_m", "pathloss_exponent", "pathloss_exponent_dl",
        "pathloss_exponent_ul", "reference_loss_db", "fading", "tx_power_dbm", "tx_power_w",
        "harvest_efficiency", "snr_gap_db", "snr_gap_linear", "noise_psd_dbm_hz", "noise_power_dbm",
        "noise_power_w", "bandwidth_hz", "energy_use_fraction", "trials", "seed", "rel_tol", "abs_tol",
        "max_iters", "bisection_tol", "rate_tol", "ellipsoid_gap", "ellipsoid_max_iters", "r_max_init",
        "weights", "rate_profile", "n_weights", "alphas", "k_values", "max_distance_m", "schemes"};
    return keys;
}

inline std::string json_scalar_text(const nlohmann::json& v, const std::string& key) {
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_number_unsigned())
        return std::to_string(v.get<std::uint64_t>());
    if (v.is_number_integer())
        return std::to_string(v.get<std::int64_t>());
    if (v.is_number_float()) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
        return buf;
    }
    throw invalid_input("config key '" + key + "' has an unsupported JSON value");
}

inline std::map<std::string, std::string> parse_json_config(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw invalid_input(std::string("config is not valid JSON: ") + e.what());
    }
    const nlohmann::json& cfg = doc.contains("config") ? doc["config"] : doc;
    if (!cfg.is_object())
        throw invalid_input("JSON config must be an object");
    std::map<std::string, std::string> raw;
    for (const auto& [key, v] : cfg.items()) {
        if (v.is_array()) {
            std::string joined;
            for (std::size_t i = 0; i < v.size(); ++i)
                joined += (i ? "," : "") + json_scalar_text(v[i], key);
            raw[key] = joined;
        } else {
            raw[key] = json_scalar_text(v, key);
        }
    }
    return raw;
}

inline std::map<std::string, std::string> parse_key_values(const std::string& text) {
    std::map<std::string, std::string> raw;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw invalid_input("config line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw invalid_input("config line " + std::to_string(lineno) + ": empty key");
        if (raw.count(key))
            throw invalid_input("config key '" + key + "' given twice");
        raw[key] = value;
    }
    return raw;
}

class KeyReader {
public:
    explicit KeyReader(std::map<std::string, std::string> raw) : raw_(std::move(raw)) {}

    bool has(const std::string& key) const { return raw_.count(key) != 0; }

    double number(const std::string& key) const {
        const std::string& s = raw_.at(key);
        return to_double(key, s);
    }

    std::vector<double> list(const std::string& key) const {
        std::string s = raw_.at(key);
        if (!s.empty() && s.front() == '[')
            s.erase(0, 1);
        if (!s.empty() && s.back() == ']')
            s.pop_back();
        std::vector<double> out;
        std::istringstream in(s);
        std::string item;
        while (std::getline(in, item, ','))
            out.push_back(to_double(key, trim(item)));
        if (out.empty())
            throw invalid_input("config key '" + key + "' needs at least one value");
        return out;
    }

    long long integer(const std::string& key, long long lo, long long hi) const {
        const double x = number(key);
        if (x != std::floor(x) || x < double(lo) || x > double(hi))
            throw invalid_input("config key '" + key + "' must be an integer in [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "]");
        return static_cast<long long>(x);
    }

    std::uint64_t unsigned_integer(const std::string& key) const {
        const std::string s = trim(raw_.at(key));
        errno = 0;
        char* end = nullptr;
        const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
        if (s.empty() || s.front() == '-' || *end != '\0' || errno == ERANGE)
            throw invalid_input("config key '" + key + "' must be a nonnegative 64-bit integer");
        return v;
    }

    std::string text(const std::string& key) const { return trim(raw_.at(key)); }

    std::vector<std::string> words(const std::string& key) const {
        std::string s = raw_.at(key);
        std::replace(s.begin(), s.end(), '[', ' ');
        std::replace(s.begin(), s.end(), ']', ' ');
        std::vector<std::string> out;
        std::istringstream in(s);
        std::string item;
        while (std::getline(in, item, ','))
            if (auto t = trim(item); !t.empty())
                out.push_back(t);
        return out;
    }

private:
    static double to_double(const std::string& key, const std::string& s) {
        errno = 0;
        char* end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        if (s.empty() || *end != '\0' || errno == ERANGE || !std::isfinite(v))
            throw invalid_input("config key '" + key + "': '" + s + "' is not a finite number");
        return v;
    }

    std::map<std::string, std::string> raw_;
};

inline void exclusive(const KeyReader& r, std::initializer_list<const char*> keys) {
    std::vector<std::string> given;
    for (const char* k : keys)
        if (r.has(k))
            given.push_back(k);
    if (given.size() > 1) {
        std::string msg = "config keys are mutually exclusive:";
        for (const auto& k : given)
            msg += " " + k;
        throw invalid_input(msg);
    }
}

inline void require_positive(const std::string& key, double x) {
    if (!(x > 0.0))
        throw invalid_input("config key '" + key + "' must be > 0");
}

} // namespace detail

/// Parses configuration text (key-value or JSON).
inline RunConfig parse_config(const std::string& text) {
    const std::string body = detail::trim(text);
    if (body.empty())
        throw invalid_input("config is empty: give gamma_db, gamma_linear or distances_m");
    auto raw = body.front() == '{' ? detail::parse_json_config(body) : detail::parse_key_values(body);

    std::vector<std::string> unknown;
    for (const auto& [k, v] : raw)
        if (!detail::known_keys().count(k))
            unknown.push_back(k);
    if (!unknown.empty()) {
        std::string msg = "unknown config keys:";
        for (const auto& k : unknown)
            msg += " " + k;
        throw invalid_input(msg);
    }

    detail::KeyReader r(std::move(raw));
    using detail::exclusive;
    exclusive(r, {"gamma_db", "gamma_linear", "distances_m"});
    exclusive(r, {"pathloss_exponent", "pathloss_exponent_dl"});
    exclusive(r, {"pathloss_exponent", "pathloss_exponent_ul"});
    exclusive(r, {"tx_power_dbm", "tx_power_w"});
    exclusive(r, {"snr_gap_db", "snr_gap_linear"});
    exclusive(r, {"noise_psd_dbm_hz", "noise_power_dbm", "noise_power_w"});

    RunConfig cfg;
    if (r.has("gamma_db")) {
        auto g = r.list("gamma_db");
        for (double& x : g)
            x = db_to_linear(x);
        cfg.gamma = g;
    } else if (r.has("gamma_linear")) {
        auto g = r.list("gamma_linear");
        for (double x : g)
            if (!(x >= 0.0))
                throw invalid_input("config key 'gamma_linear' entries must be >= 0");
        cfg.gamma = g;
    } else if (r.has("distances_m")) {
        cfg.has_scenario = true;
        cfg.scenario.user_distances = r.list("distances_m");
    } else {
        throw invalid_input("config must define the users: give gamma_db, gamma_linear or distances_m");
    }

    auto& sc = cfg.scenario;
    auto& p = sc.physical;
    if (r.has("pathloss_exponent"))
        sc.pathloss_exponent_dl = sc.pathloss_exponent_ul = r.number("pathloss_exponent");
    if (r.has("pathloss_exponent_dl"))
        sc.pathloss_exponent_dl = r.number("pathloss_exponent_dl");
    if (r.has("pathloss_exponent_ul"))
        sc.pathloss_exponent_ul = r.number("pathloss_exponent_ul");
    if (r.has("reference_loss_db"))
        sc.reference_loss_db = r.number("reference_loss_db");
    if (r.has("fading")) {
        const auto f = r.text("fading");
        if (f == "none")
            sc.fading = Fading::none;
        else if (f == "rayleigh")
            sc.fading = Fading::rayleigh;
        else
            throw invalid_input("config key 'fading' must be 'none' or 'rayleigh'");
    }
    if (r.has("tx_power_dbm"))
        p.transmit_power_hap = dbm_to_watts(r.number("tx_power_dbm"));
    if (r.has("tx_power_w"))
        p.transmit_power_hap = r.number("tx_power_w");
    if (r.has("harvest_efficiency"))
        p.harvest_efficiency = r.number("harvest_efficiency");
    if (r.has("snr_gap_db"))
        p.snr_gap = db_to_linear(r.number("snr_gap_db"));
    if (r.has("snr_gap_linear"))
        p.snr_gap = r.number("snr_gap_linear");
    if (r.has("bandwidth_hz"))
        p.bandwidth_hz = r.number("bandwidth_hz");
    if (r.has("noise_psd_dbm_hz"))
        p.noise_power = dbm_to_watts(r.number("noise_psd_dbm_hz")) * p.bandwidth_hz;
    if (r.has("noise_power_dbm"))
        p.noise_power = dbm_to_watts(r.number("noise_power_dbm"));
    if (r.has("noise_power_w"))
        p.noise_power = r.number("noise_power_w");
    if (r.has("energy_use_fraction"))
        p.energy_use_fraction = r.list("energy_use_fraction");
    if (r.has("trials"))
        sc.trials = int(r.integer("trials", 1, 100000000));
    if (r.has("seed"))
        sc.seed = r.unsigned_integer("seed");

    auto& c = cfg.controls;
    if (r.has("rel_tol"))
        c.rel_tol = r.number("rel_tol");
    if (r.has("abs_tol"))
        c.abs_tol = r.number("abs_tol");
    if (r.has("max_iters"))
        c.max_iters = int(r.integer("max_iters", 1, 1000000));
    if (r.has("bisection_tol"))
        c.bisection_tol = r.number("bisection_tol");
    if (r.has("rate_tol"))
        c.rate_tol = r.number("rate_tol");
    if (r.has("ellipsoid_gap"))
        c.ellipsoid_gap = r.number("ellipsoid_gap");
    if (r.has("ellipsoid_max_iters"))
        c.ellipsoid_max_iters = int(r.integer("ellipsoid_max_iters", 0, 100000000));
    c.validate();

    if (r.has("r_max_init")) {
        cfg.r_max_init = r.number("r_max_init");
        detail::require_positive("r_max_init", *cfg.r_max_init);
    }
    if (r.has("weights"))
        cfg.weights = r.list("weights");
    if (r.has("rate_profile"))
        cfg.rate_profile = r.list("rate_profile");
    if (r.has("n_weights"))
        cfg.n_weights = int(r.integer("n_weights", 2, 1000000));
    if (r.has("alphas"))
        cfg.alphas = r.list("alphas");
    if (r.has("k_values")) {
        cfg.k_values.clear();
        for (double k : r.list("k_values")) {
            if (k != std::floor(k) || k < 1.0 || k > 10000.0)
                throw invalid_input("config key 'k_values' entries must be integers in [1, 10000]");
            cfg.k_values.push_back(int(k));
        }
    }
    if (r.has("max_distance_m")) {
        cfg.max_distance = r.number("max_distance_m");
        detail::require_positive("max_distance_m", cfg.max_distance);
    }
    if (r.has("schemes"))
        for (const auto& s : r.words("schemes"))
            cfg.schemes.push_back(parse_scheme(s));

    // range checks that depend on the user count
    const std::size_t K = cfg.users();
    if (!cfg.weights.empty()) {
        if (cfg.weights.size() != K)
            throw invalid_input("config key 'weights' needs one entry per user");
        Weights check(cfg.weights);
    }
    if (!cfg.rate_profile.empty()) {
        if (cfg.rate_profile.size() != K)
            throw invalid_input("config key 'rate_profile' needs one entry per user");
        for (double b : cfg.rate_profile)
            detail::require_positive("rate_profile", b);
    }
    for (double a : cfg.alphas)
        if (!(a >= 2.0 && a <= 4.0))
            throw invalid_input("config key 'alphas' entries must lie in [2, 4]");
    if (!p.energy_use_fraction.empty() && cfg.has_scenario && p.energy_use_fraction.size() != K)
        throw invalid_input("config key 'energy_use_fraction' needs one entry per user");
    sc.validate();
    return cfg;
}

inline RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw invalid_input("cannot read config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

/// Resolved configuration in linear units.  Reading it back with
/// parse_config gives the same doubles (JSON numbers round-trip exactly).
inline nlohmann::ordered_json RunConfig::echo() const {
    nlohmann::ordered_json j;
    if (gamma) {
        j["gamma_linear"] = *gamma;
    } else {
        j["distances_m"] = scenario.user_distances;
        j["pathloss_exponent_dl"] = scenario.pathloss_exponent_dl;
        j["pathloss_exponent_ul"] = scenario.pathloss_exponent_ul;
        j["reference_loss_db"] = scenario.reference_loss_db;
        j["fading"] = std::string(to_string(scenario.fading));
        j["tx_power_w"] = scenario.physical.transmit_power_hap;
        j["harvest_efficiency"] = scenario.physical.harvest_efficiency;
        j["snr_gap_linear"] = scenario.physical.snr_gap;
        j["noise_power_w"] = scenario.physical.noise_power;
        j["bandwidth_hz"] = scenario.physical.bandwidth_hz;
        if (!scenario.physical.energy_use_fraction.empty())
            j["energy_use_fraction"] = scenario.physical.energy_use_fraction;
        j["trials"] = scenario.trials;
        j["seed"] = scenario.seed;
        j["alphas"] = alphas;
        j["k_values"] = k_values;
        j["max_distance_m"] = max_distance;
    }
    j["rel_tol"] = controls.rel_tol;
    j["abs_tol"] = controls.abs_tol;
    j["max_iters"] = controls.max_iters;
    j["bisection_tol"] = controls.bisection_tol;
    j["rate_tol"] = controls.rate_tol;
    j["ellipsoid_gap"] = controls.ellipsoid_gap;
    j["ellipsoid_max_iters"] = controls.ellipsoid_max_iters;
    if (r_max_init)
        j["r_max_init"] = *r_max_init;
    if (!weights.empty())
        j["weights"] = weights;
    if (!rate_profile.empty())
        j["rate_profile"] = rate_profile;
    j["n_weights"] = n_weights;
    if (!schemes.empty()) {
        std::vector<std::string> names;
        for (auto s : schemes)
            names.emplace_back(to_string(s));
        j["schemes"] = names;
    }
    return j;
}

} // namespace wpcn

#endif
