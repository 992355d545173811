#ifndef WPCN_SIMULATION_HPP
#define WPCN_SIMULATION_HPP

// Monte Carlo comparison of time-allocation schemes over random channels.
//
// Channels follow h_i = 10^(-L/10) rho_i^2 D_i^(-alpha_d) and
// g_i = 10^(-L/10) rho_i^2 D_i^(-alpha_u) with reciprocal fading rho_i^2 drawn
// from a unit-mean exponential (Rayleigh amplitude), or rho_i^2 = 1 without
// fading.  Each (trial, user) pair owns a generator seeded from a hash of
// (seed, trial, user), so a trial's channels do not depend on which thread ran
// it or in what order.

#include <wpcn/common_solver.hpp>
#include <wpcn/controls.hpp>
#include <wpcn/errors.hpp>
#include <wpcn/model.hpp>
#include <wpcn/sum_solver.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace wpcn {

enum class Fading { none, rayleigh };

enum class Scheme { sum_opt, common_opt, eta, conventional_tdma };

inline constexpr std::array<Scheme, 4> all_schemes{Scheme::sum_opt, Scheme::common_opt, Scheme::eta,
                                                   Scheme::conventional_tdma};

inline std::string_view to_string(Scheme s) {
    switch (s) {
    case Scheme::sum_opt: return "sum_opt";
    case Scheme::common_opt: return "common_opt";
    case Scheme::eta: return "eta";
    case Scheme::conventional_tdma: return "conventional_tdma";
    }
    return "?";
}

inline Scheme parse_scheme(std::string_view name) {
    for (auto s : all_schemes)
        if (to_string(s) == name)
            return s;
    throw invalid_input("unknown scheme '" + std::string(name) +
                        "' (expected sum_opt, common_opt, eta, conventional_tdma)");
}

inline std::string_view to_string(Fading f) { return f == Fading::none ? "none" : "rayleigh"; }

struct ScenarioConfig {
    std::vector<double> user_distances{5.0, 10.0};
    double pathloss_exponent_dl = 2.0;
    double pathloss_exponent_ul = 2.0;
    double reference_loss_db = 30.0;
    Fading fading = Fading::rayleigh;
    PhysicalParams physical;
    int trials = 1000;
    std::uint64_t seed = 1;

    std::size_t users() const { return user_distances.size(); }

    void validate() const {
        if (user_distances.empty())
            throw invalid_input("scenario needs at least one user distance");
        for (double d : user_distances)
            if (!(d > 0.0) || !std::isfinite(d))
                throw invalid_input("user distances must be > 0");
        if (!(pathloss_exponent_dl >= 2.0) || !(pathloss_exponent_ul >= 2.0))
            throw invalid_input("pathloss exponents must be >= 2");
        if (!std::isfinite(reference_loss_db))
            throw invalid_input("reference_loss_db must be finite");
        if (trials < 1)
            throw invalid_input("trials must be >= 1");
        physical.validate();
    }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t trial, std::uint64_t user) {
    return splitmix64(splitmix64(splitmix64(seed) ^ trial) ^ (user * 0xd1b54a32d192ed03ULL));
}

} // namespace detail

/// Unit-mean exponential fading power for one (trial, user) pair.
inline double fading_power(std::uint64_t seed, std::uint64_t trial, std::uint64_t user) {
    std::mt19937_64 eng(detail::stream_seed(seed, trial, user));
    std::exponential_distribution<double> exp1(1.0);
    return exp1(eng);
}

inline ChannelRealization draw_channels(const ScenarioConfig& config, std::uint64_t trial_index) {
    config.validate();
    const std::size_t K = config.users();
    const double ref = std::pow(10.0, -config.reference_loss_db / 10.0);
    ChannelRealization ch{std::vector<double>(K), std::vector<double>(K), config.user_distances};
    for (std::size_t i = 0; i < K; ++i) {
        const double rho2 = config.fading == Fading::none ? 1.0 : fading_power(config.seed, trial_index, i);
        const double d = config.user_distances[i];
        ch.dl_gains[i] = ref * rho2 * std::pow(d, -config.pathloss_exponent_dl);
        ch.ul_gains[i] = ref * rho2 * std::pow(d, -config.pathloss_exponent_ul);
    }
    return ch;
}

/// Effective SNRs of a TDMA network without energy transfer in which every
/// user spends the mean energy the WPCN users harvest at the WPCN's optimal
/// tau_0: gamma_i = g_i * E_mean / (Gamma sigma^2).
inline NetworkInstance conventional_tdma_instance(const ScenarioConfig& config, const ChannelRealization& channels,
                                                  const SumSolution& wpcn_reference) {
    const auto& p = config.physical;
    const auto energy = harvested_energy(p, channels, wpcn_reference.allocation.dl());
    double mean = 0.0;
    for (double e : energy)
        mean += e;
    mean /= double(energy.size());
    std::vector<double> gamma(channels.size());
    for (std::size_t i = 0; i < gamma.size(); ++i)
        gamma[i] = channels.ul_gains[i] * mean / (p.snr_gap * p.noise_power);
    return NetworkInstance(std::move(gamma));
}

struct TrialResult {
    ChannelRealization channel;
    std::map<Scheme, ThroughputReport> solutions;
};

/// Runs the requested schemes on one trial.  Throws degenerate_instance or
/// iteration_limit when a solver cannot handle the draw.
inline TrialResult run_trial(const ScenarioConfig& config, std::uint64_t trial_index,
                             const std::vector<Scheme>& schemes, const SolverControls& controls = {}) {
    auto channels = draw_channels(config, trial_index);
    auto instance = effective_snr(config.physical, channels);
    TrialResult tr{channels, {}};

    auto want = [&](Scheme s) { return std::find(schemes.begin(), schemes.end(), s) != schemes.end(); };
    std::optional<SumSolution> sum;
    if (want(Scheme::sum_opt) || want(Scheme::conventional_tdma))
        sum = solve_sum(instance, controls);
    if (want(Scheme::sum_opt))
        tr.solutions.emplace(Scheme::sum_opt, sum->report);
    if (want(Scheme::common_opt))
        tr.solutions.emplace(Scheme::common_opt, solve_common(instance, controls).report);
    if (want(Scheme::eta))
        tr.solutions.emplace(Scheme::eta, evaluate_rates(instance, TimeAllocation::equal(instance.users())));
    if (want(Scheme::conventional_tdma)) {
        auto tdma = conventional_tdma_instance(config, channels, *sum);
        tr.solutions.emplace(Scheme::conventional_tdma, solve_conventional_tdma(tdma).report);
    }
    return tr;
}

struct SchemeStats {
    std::vector<double> mean_rates; // per user
    std::vector<double> mean_tau;   // tau_0 .. tau_K
    double mean_sum_rate = 0.0;
    double mean_min_rate = 0.0;
    double mean_tau_ratio = 0.0;    // mean of tau_2 / tau_1 (K >= 2, tau_1 > 0)
    int trials = 0;
};

struct ComparisonResult {
    std::map<Scheme, SchemeStats> schemes;
    std::uint64_t seed = 0;
    int trials_requested = 0;
    int trials_failed = 0;
    // trials where sum_opt's sum (common_opt's minimum) fell below another
    // scheme's by more than the rate tolerance
    int dominance_violations = 0;
};

/// Monte Carlo over config.trials draws.  Per-trial results land in a slot
/// indexed by trial and are reduced in trial order, so the output does not
/// depend on `threads`.
inline ComparisonResult run_comparison(const ScenarioConfig& config, const std::vector<Scheme>& schemes,
                                       const SolverControls& controls = {}, unsigned threads = 0) {
    config.validate();
    if (schemes.empty())
        throw invalid_input("run_comparison: no schemes requested");
    const int n = config.trials;
    std::vector<std::optional<TrialResult>> slots(static_cast<std::size_t>(n));

    auto work = [&](int begin, int end) {
        for (int t = begin; t < end; ++t) {
            try {
                slots[std::size_t(t)] = run_trial(config, std::uint64_t(t), schemes, controls);
            } catch (const degenerate_instance&) {
            } catch (const iteration_limit&) {
            }
        }
    };
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, unsigned(n));
    if (threads <= 1) {
        work(0, n);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned k = 0; k < threads; ++k)
            pool.emplace_back(work, int(std::int64_t(n) * k / threads), int(std::int64_t(n) * (k + 1) / threads));
    }

    const std::size_t K = config.users();
    ComparisonResult out;
    out.seed = config.seed;
    out.trials_requested = n;
    for (auto s : schemes)
        out.schemes[s] = SchemeStats{std::vector<double>(K, 0.0), std::vector<double>(K + 1, 0.0)};

    for (const auto& slot : slots) {
        if (!slot) {
            ++out.trials_failed;
            continue;
        }
        const auto& sol = slot->solutions;
        for (const auto& [scheme, rep] : sol) {
            auto& st = out.schemes[scheme];
            for (std::size_t i = 0; i < K; ++i)
                st.mean_rates[i] += rep.per_user_rates[i];
            for (std::size_t i = 0; i <= K; ++i)
                st.mean_tau[i] += rep.allocation[i];
            st.mean_sum_rate += rep.sum_rate;
            st.mean_min_rate += rep.min_rate;
            if (K >= 2 && rep.allocation.ul(0) > 0.0)
                st.mean_tau_ratio += rep.allocation.ul(1) / rep.allocation.ul(0);
            ++st.trials;
        }
        // the TDMA baseline runs on a different network and is not compared
        bool violated = false;
        if (auto it = sol.find(Scheme::sum_opt); it != sol.end())
            for (const auto& [scheme, rep] : sol)
                violated = violated || (scheme != Scheme::conventional_tdma &&
                                        rep.sum_rate > it->second.sum_rate + controls.rate_tol);
        if (auto it = sol.find(Scheme::common_opt); it != sol.end())
            for (const auto& [scheme, rep] : sol)
                violated = violated || (scheme != Scheme::conventional_tdma &&
                                        rep.min_rate > it->second.min_rate + controls.rate_tol);
        out.dominance_violations += violated ? 1 : 0;
    }

    for (auto& [scheme, st] : out.schemes) {
        if (st.trials == 0)
            continue;
        const double inv = 1.0 / double(st.trials);
        for (double& x : st.mean_rates)
            x *= inv;
        for (double& x : st.mean_tau)
            x *= inv;
        st.mean_sum_rate *= inv;
        st.mean_min_rate *= inv;
        st.mean_tau_ratio *= inv;
    }
    return out;
}

struct SweepPoint {
    double value = 0.0; // alpha or K
    ScenarioConfig config;
    ComparisonResult result;
};

/// Common pathloss exponent sweep (alpha_d = alpha_u = alpha) on shared seeds.
inline std::vector<SweepPoint> sweep_pathloss(const ScenarioConfig& config, const std::vector<double>& alphas,
                                              const std::vector<Scheme>& schemes,
                                              const SolverControls& controls = {}, unsigned threads = 0) {
    std::vector<SweepPoint> out;
    for (double a : alphas) {
        if (!(a >= 2.0 && a <= 4.0))
            throw invalid_input("sweep_pathloss: alpha values must lie in [2, 4]");
        ScenarioConfig c = config;
        c.pathloss_exponent_dl = c.pathloss_exponent_ul = a;
        out.push_back(SweepPoint{a, c, run_comparison(c, schemes, controls, threads)});
    }
    return out;
}

/// User-count sweep with users evenly spaced out to max_distance:
/// D_i = (max_distance / K) * i.
inline std::vector<SweepPoint> sweep_users(const ScenarioConfig& base, const std::vector<int>& k_values,
                                           const std::vector<Scheme>& schemes, double max_distance = 10.0,
                                           const SolverControls& controls = {}, unsigned threads = 0) {
    if (!(max_distance > 0.0))
        throw invalid_input("sweep_users: max_distance must be > 0");
    std::vector<SweepPoint> out;
    for (int K : k_values) {
        if (K < 1)
            throw invalid_input("sweep_users: user counts must be >= 1");
        ScenarioConfig c = base;
        c.user_distances.resize(std::size_t(K));
        for (int i = 1; i <= K; ++i)
            c.user_distances[std::size_t(i - 1)] = max_distance / double(K) * double(i);
        c.physical.energy_use_fraction.clear();
        out.push_back(SweepPoint{double(K), c, run_comparison(c, schemes, controls, threads)});
    }
    return out;
}

} // namespace wpcn

#endif
