#ifndef WPCN_CLI_HPP
#define WPCN_CLI_HPP

// Command dispatch and result serialization for the wpcn tool.  Numbers are
// written with 17 significant digits; rounded copies go in separate
// presentation columns.

#include <wpcn/common_solver.hpp>
#include <wpcn/config.hpp>
#include <wpcn/errors.hpp>
#include <wpcn/model.hpp>
#include <wpcn/simulation.hpp>
#include <wpcn/sum_solver.hpp>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace wpcn {

enum class Command {
    solve_sum,
    solve_common,
    solve_weighted,
    solve_profile,
    region,
    simulate,
    sweep_alpha,
    sweep_users,
    baseline_tdma
};

inline constexpr std::array<std::pair<Command, std::string_view>, 9> command_names{{
    {Command::solve_sum, "solve-sum"},
    {Command::solve_common, "solve-common"},
    {Command::solve_weighted, "solve-weighted"},
    {Command::solve_profile, "solve-profile"},
    {Command::region, "region"},
    {Command::simulate, "simulate"},
    {Command::sweep_alpha, "sweep-alpha"},
    {Command::sweep_users, "sweep-users"},
    {Command::baseline_tdma, "baseline-tdma"},
}};

inline std::string_view to_string(Command c) {
    for (const auto& [cmd, name] : command_names)
        if (cmd == c)
            return name;
    return "?";
}

enum class Format { csv, json };
enum class Verbosity { quiet, normal, verbose };

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int config_error = 2;
inline constexpr int no_convergence = 3;
inline constexpr int degenerate = 4;
} // namespace exit_code

struct RunManifest {
    Command command = Command::solve_sum;
    std::filesystem::path config_path;
    std::filesystem::path output_path;
    Format output_format = Format::csv;
    std::optional<std::uint64_t> seed_override;
    std::optional<int> trials_override;
    Verbosity verbosity = Verbosity::normal;
    unsigned threads = 0; // simulation worker threads, 0 = hardware
};

/// A cell is empty, a number or a label.
using Cell = std::variant<std::monostate, double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

struct RunOutput {
    Table table;
    nlohmann::ordered_json metadata;
    bool degenerate = false;
};

namespace detail {

inline std::string full_precision(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string fixed4(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", x);
    return buf;
}

inline std::string csv_cell(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c))
        return full_precision(*d);
    if (const auto* s = std::get_if<std::string>(&c))
        return *s;
    return {};
}

inline nlohmann::ordered_json json_cell(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c))
        return *d;
    if (const auto* s = std::get_if<std::string>(&c))
        return *s;
    return nullptr;
}

inline std::string user_label(std::size_t i) { return "user_" + std::to_string(i + 1); }

// Rows for a single allocation: dl_wet, user_i, summary rows.
inline Table allocation_table(const ThroughputReport& rep, double bandwidth_hz, std::optional<double> common) {
    Table t{{"entity", "tau", "rate_bpshz", "rate_bps", "tau_4dp", "rate_4dp"}, {}};
    auto row = [&](std::string entity, std::optional<double> tau, std::optional<double> rate) {
        std::vector<Cell> r{std::move(entity)};
        r.push_back(tau ? Cell{*tau} : Cell{});
        r.push_back(rate ? Cell{*rate} : Cell{});
        r.push_back(rate ? Cell{*rate * bandwidth_hz} : Cell{});
        r.push_back(tau ? Cell{fixed4(*tau)} : Cell{});
        r.push_back(rate ? Cell{fixed4(*rate)} : Cell{});
        t.rows.push_back(std::move(r));
    };
    const auto& a = rep.allocation;
    row("dl_wet", a.dl(), std::nullopt);
    for (std::size_t i = 0; i < a.users(); ++i)
        row(user_label(i), a.ul(i), rep.per_user_rates[i]);
    row("summary_sum", a.total(), rep.sum_rate);
    row("summary_min", std::nullopt, rep.min_rate);
    if (common)
        row("summary_common", std::nullopt, *common);
    return t;
}

inline void append_stats_rows(Table& t, const std::vector<Cell>& prefix, Scheme scheme, const SchemeStats& st) {
    auto row = [&](std::string entity, std::optional<double> tau, std::optional<double> rate) {
        std::vector<Cell> r(prefix);
        r.push_back(std::string(to_string(scheme)));
        r.push_back(std::move(entity));
        r.push_back(tau ? Cell{*tau} : Cell{});
        r.push_back(rate ? Cell{*rate} : Cell{});
        t.rows.push_back(std::move(r));
    };
    row("dl_wet", st.mean_tau[0], std::nullopt);
    for (std::size_t i = 0; i < st.mean_rates.size(); ++i)
        row(user_label(i), st.mean_tau[i + 1], st.mean_rates[i]);
    row("summary_sum", std::nullopt, st.mean_sum_rate);
    row("summary_min", std::nullopt, st.mean_min_rate);
    if (st.mean_rates.size() >= 2)
        row("tau_ratio_2_1", st.mean_tau_ratio, std::nullopt);
}

inline nlohmann::ordered_json comparison_metadata(const ComparisonResult& r) {
    nlohmann::ordered_json m;
    m["seed"] = r.seed;
    m["trials_requested"] = r.trials_requested;
    m["trials_failed"] = r.trials_failed;
    m["dominance_violations"] = r.dominance_violations;
    nlohmann::ordered_json per;
    for (const auto& [s, st] : r.schemes)
        per[std::string(to_string(s))] = st.trials;
    m["trials_per_scheme"] = per;
    return m;
}

inline std::vector<Scheme> schemes_or(const RunConfig& cfg, std::vector<Scheme> fallback) {
    return cfg.schemes.empty() ? fallback : cfg.schemes;
}

inline void require_scenario(const RunConfig& cfg, Command cmd) {
    if (!cfg.has_scenario)
        throw invalid_input(std::string(to_string(cmd)) + " needs a physical scenario (distances_m)");
}

inline double bandwidth(const RunConfig& cfg) { return cfg.scenario.physical.bandwidth_hz; }

inline RunOutput run_solve_sum(const RunConfig& cfg) {
    const auto inst = cfg.instance();
    const auto sol = solve_sum(inst, cfg.controls);
    RunOutput out{allocation_table(sol.report, bandwidth(cfg), std::nullopt), {}};
    out.metadata["A"] = sol.A;
    out.metadata["z_star"] = sol.z_star;
    out.metadata["root_residual"] = f_of_z(sol.z_star) - sol.A;
    out.metadata["gamma_linear"] = std::vector<double>(inst.gamma().begin(), inst.gamma().end());
    return out;
}

inline RunOutput run_common_like(const RunConfig& cfg, bool profile) {
    const auto inst = cfg.instance();
    CommonSolution sol = [&] {
        if (!profile)
            return solve_common(inst, cfg.controls, cfg.r_max_init);
        if (cfg.rate_profile.empty())
            throw invalid_input("solve-profile needs the rate_profile key");
        double s = 0.0;
        for (double b : cfg.rate_profile)
            s += b;
        auto beta = std::abs(s - 1.0) <= 1e-12 ? RateProfile(cfg.rate_profile)
                                                : RateProfile::from_required(cfg.rate_profile);
        return solve_rate_profile(inst, beta, cfg.controls, cfg.r_max_init);
    }();
    if (!sol.converged)
        throw iteration_limit("common-throughput bisection did not converge", sol.r_min, sol.r_max);
    RunOutput out{allocation_table(sol.report, bandwidth(cfg), sol.common_rate), {}, sol.degenerate};
    auto& m = out.metadata;
    m["common_rate"] = sol.common_rate;
    m["bisection_iterations"] = sol.bisection_iters;
    m["ellipsoid_iterations"] = sol.ellipsoid_iters;
    m["unresolved_checks"] = sol.unresolved_checks;
    m["bracket"] = {sol.r_min, sol.r_max};
    m["degenerate"] = sol.degenerate;
    double spread = 0.0;
    for (double r : sol.report.per_user_rates)
        spread = std::max(spread, r - sol.report.min_rate);
    m["rate_spread"] = spread;
    m["gamma_linear"] = std::vector<double>(inst.gamma().begin(), inst.gamma().end());
    return out;
}

inline RunOutput run_solve_weighted(const RunConfig& cfg) {
    const auto inst = cfg.instance();
    const Weights w = cfg.weights.empty() ? Weights::unit(inst.users()) : Weights(cfg.weights);
    const auto sol = solve_weighted_sum(inst, w, cfg.controls);
    const auto rep = evaluate_rates(inst, sol.allocation);
    RunOutput out{allocation_table(rep, bandwidth(cfg), std::nullopt), {}};
    const auto res = weighted_sum_residuals(inst, w, sol);
    double objective = 0.0;
    for (std::size_t i = 0; i < inst.users(); ++i)
        objective += w.lambda[i] * rep.per_user_rates[i];
    auto& m = out.metadata;
    m["weights"] = w.lambda;
    m["weighted_sum"] = objective;
    m["mu_star"] = sol.mu_star;
    nlohmann::ordered_json z = nlohmann::ordered_json::array();
    for (double x : sol.z)
        z.push_back(std::isfinite(x) ? nlohmann::ordered_json(x) : nlohmann::ordered_json(nullptr));
    m["z"] = z;
    m["iterations"] = sol.iterations;
    m["kkt_residual_per_user"] = res.per_user;
    m["kkt_residual_coupling"] = res.coupling;
    return out;
}

inline RunOutput run_region(const RunConfig& cfg) {
    const auto inst = cfg.instance();
    const auto pts = throughput_region(inst, cfg.n_weights, cfg.controls);
    const std::size_t K = inst.users();
    Table t;
    t.columns.push_back("point");
    for (std::size_t i = 0; i < K; ++i)
        t.columns.push_back("weight_" + std::to_string(i + 1));
    for (std::size_t i = 0; i < K; ++i)
        t.columns.push_back("rate_" + user_label(i) + "_bpshz");
    t.columns.push_back("sum_rate_bpshz");
    t.columns.push_back("tau_0");
    std::size_t best = 0;
    double best_sum = -1.0;
    for (std::size_t j = 0; j < pts.size(); ++j) {
        std::vector<Cell> r{double(j)};
        double sum = 0.0;
        for (double w : pts[j].weights)
            r.push_back(w);
        for (double x : pts[j].rates) {
            r.push_back(x);
            sum += x;
        }
        r.push_back(sum);
        r.push_back(pts[j].allocation.dl());
        t.rows.push_back(std::move(r));
        if (sum > best_sum) {
            best_sum = sum;
            best = j;
        }
    }
    RunOutput out{std::move(t), {}};
    out.metadata["n_weights"] = cfg.n_weights;
    out.metadata["max_sum_point"] = best;
    out.metadata["max_sum_rate"] = best_sum;
    return out;
}

inline RunOutput run_baseline_tdma(const RunConfig& cfg) {
    std::optional<NetworkInstance> tdma;
    nlohmann::ordered_json m;
    if (cfg.gamma) {
        // gamma already describes the TDMA users' fixed-energy SNRs
        tdma.emplace(*cfg.gamma);
    } else {
        const auto channels = draw_channels(cfg.scenario, 0);
        const auto wpcn = solve_sum(effective_snr(cfg.scenario.physical, channels), cfg.controls);
        tdma.emplace(conventional_tdma_instance(cfg.scenario, channels, wpcn));
        m["reference_tau0"] = wpcn.allocation.dl();
    }
    const auto sol = solve_conventional_tdma(*tdma);
    RunOutput out{allocation_table(sol.report, bandwidth(cfg), std::nullopt), std::move(m)};
    out.metadata["gamma_linear"] = std::vector<double>(tdma->gamma().begin(), tdma->gamma().end());
    return out;
}

inline RunOutput run_simulate(const RunConfig& cfg, unsigned threads) {
    require_scenario(cfg, Command::simulate);
    const auto schemes = schemes_or(cfg, {all_schemes.begin(), all_schemes.end()});
    const auto res = run_comparison(cfg.scenario, schemes, cfg.controls, threads);
    Table t{{"scheme", "entity", "mean_tau", "mean_rate_bpshz"}, {}};
    for (const auto& [s, st] : res.schemes)
        append_stats_rows(t, {}, s, st);
    return RunOutput{std::move(t), comparison_metadata(res)};
}

inline RunOutput run_sweep(const RunConfig& cfg, Command cmd, unsigned threads) {
    require_scenario(cfg, cmd);
    const auto schemes = schemes_or(cfg, {Scheme::sum_opt, Scheme::common_opt, Scheme::eta});
    const bool alpha = cmd == Command::sweep_alpha;
    const auto points = alpha ? sweep_pathloss(cfg.scenario, cfg.alphas, schemes, cfg.controls, threads)
                              : sweep_users(cfg.scenario, cfg.k_values, schemes, cfg.max_distance, cfg.controls,
                                            threads);
    Table t{{alpha ? "alpha" : "users", "scheme", "entity", "mean_tau", "mean_rate_bpshz"}, {}};
    nlohmann::ordered_json per = nlohmann::ordered_json::array();
    for (const auto& pt : points) {
        for (const auto& [s, st] : pt.result.schemes)
            append_stats_rows(t, {pt.value}, s, st);
        auto m = comparison_metadata(pt.result);
        m[alpha ? "alpha" : "users"] = pt.value;
        per.push_back(std::move(m));
    }
    RunOutput out{std::move(t), {}};
    out.metadata["points"] = std::move(per);
    return out;
}

} // namespace detail

/// Executes one command on an already loaded configuration.
inline RunOutput execute(Command cmd, const RunConfig& cfg, unsigned threads = 0) {
    switch (cmd) {
    case Command::solve_sum: return detail::run_solve_sum(cfg);
    case Command::solve_common: return detail::run_common_like(cfg, false);
    case Command::solve_profile: return detail::run_common_like(cfg, true);
    case Command::solve_weighted: return detail::run_solve_weighted(cfg);
    case Command::region: return detail::run_region(cfg);
    case Command::baseline_tdma: return detail::run_baseline_tdma(cfg);
    case Command::simulate: return detail::run_simulate(cfg, threads);
    case Command::sweep_alpha:
    case Command::sweep_users: return detail::run_sweep(cfg, cmd, threads);
    }
    throw invalid_input("unknown command");
}

inline std::string to_csv(const Table& t) {
    std::string s;
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        s += (i ? "," : "") + t.columns[i];
    s += "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            s += (i ? "," : "") + detail::csv_cell(row[i]);
        s += "\n";
    }
    return s;
}

inline nlohmann::ordered_json to_json(const Table& t) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < row.size(); ++i)
            obj[t.columns[i]] = detail::json_cell(row[i]);
        arr.push_back(std::move(obj));
    }
    return arr;
}

inline nlohmann::ordered_json document(Command cmd, const RunOutput& out, const RunConfig& cfg, bool with_results) {
    nlohmann::ordered_json doc;
    doc["command"] = std::string(to_string(cmd));
    if (with_results)
        doc["results"] = to_json(out.table);
    doc["metadata"] = out.metadata;
    doc["metadata"]["units"] = {{"tau", "fraction of block"},
                                {"rate_bpshz", "bps/Hz"},
                                {"rate_bps", "bps"},
                                {"power", "W"}};
    doc["config"] = cfg.echo();
    return doc;
}

inline std::filesystem::path metadata_path(const std::filesystem::path& out) {
    return std::filesystem::path(out.string() + ".meta.json");
}

namespace detail {

// Fails early, before any solve, if `path` cannot be written.
inline void check_writable(const std::filesystem::path& path) {
    namespace fs = std::filesystem;
    if (path.empty())
        throw std::runtime_error("no output path given");
    std::error_code ec;
    if (fs::is_directory(path, ec))
        throw std::runtime_error("output path " + path.string() + " is a directory");
    const bool existed = fs::exists(path, ec);
    {
        std::ofstream probe(path, std::ios::app);
        if (!probe)
            throw std::runtime_error("cannot write output file " + path.string());
    }
    if (!existed)
        fs::remove(path, ec);
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!(f << content))
        throw std::runtime_error("failed writing " + path.string());
}

} // namespace detail

/// Runs a manifest end to end and returns the process exit status.
inline int run(const RunManifest& m, std::ostream& log = std::cerr) {
    const bool quiet = m.verbosity == Verbosity::quiet;
    RunConfig cfg;
    try {
        cfg = load_config(m.config_path);
        if (m.seed_override)
            cfg.scenario.seed = *m.seed_override;
        if (m.trials_override) {
            if (*m.trials_override < 1)
                throw invalid_input("--trials must be >= 1");
            cfg.scenario.trials = *m.trials_override;
        }
        detail::check_writable(m.output_path);
        if (m.output_format == Format::csv)
            detail::check_writable(metadata_path(m.output_path));
    } catch (const std::exception& e) {
        log << "error: " << e.what() << "\n";
        return exit_code::config_error;
    }

    RunOutput out;
    try {
        if (m.verbosity == Verbosity::verbose)
            log << to_string(m.command) << ": " << cfg.users() << " users\n";
        out = execute(m.command, cfg, m.threads);
    } catch (const invalid_input& e) {
        log << "error: " << e.what() << "\n";
        return exit_code::config_error;
    } catch (const iteration_limit& e) {
        log << "error: " << e.what() << " (bracket [" << e.lower() << ", " << e.upper() << "])\n";
        return exit_code::no_convergence;
    } catch (const degenerate_instance& e) {
        log << "error: " << e.what() << "\n";
        return exit_code::degenerate;
    }

    try {
        if (m.output_format == Format::csv) {
            detail::write_file(m.output_path, to_csv(out.table));
            detail::write_file(metadata_path(m.output_path), document(m.command, out, cfg, false).dump(2) + "\n");
        } else {
            detail::write_file(m.output_path, document(m.command, out, cfg, true).dump(2) + "\n");
        }
    } catch (const std::exception& e) {
        log << "error: " << e.what() << "\n";
        return exit_code::config_error;
    }

    if (m.verbosity == Verbosity::verbose)
        log << out.metadata.dump() << "\n";
    if (!quiet)
        log << "wrote " << m.output_path.string() << "\n";
    if (out.degenerate) {
        if (!quiet)
            log << "warning: degenerate instance (a user has zero effective SNR)\n";
        return exit_code::degenerate;
    }
    return exit_code::ok;
}

} // namespace wpcn

#endif
