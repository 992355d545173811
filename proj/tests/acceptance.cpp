// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.  Usage: acceptance [path-to-wpcn-cli]

#include "oracle.hpp"

#include <wpcn/common_solver.hpp>
#include <wpcn/simulation.hpp>
#include <wpcn/sum_solver.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace wpcn;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
    void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string fmt(const char* f, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

std::string fmt(const char* f, double a, double b, double c) {
    char buf[200];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

const std::vector<double> two_user{158.48931924611142, 10.0};

Outcome single_user() {
    Outcome o;
    NetworkInstance inst({10.0});
    const auto t0 = Clock::now();
    const auto s = solve_sum(inst);
    const double ms = ms_since(t0);
    o.require(std::abs(s.allocation.dl() - 0.42) <= 0.01, fmt("tau0 = %.6f", s.allocation.dl()));
    o.require(ms < 1.0, fmt("runtime %.3f ms", ms));
    o.note(fmt("tau0 = %.6f, %.3f ms", s.allocation.dl(), ms));
    return o;
}

Outcome two_user_sum() {
    Outcome o;
    NetworkInstance inst(two_user);
    const auto t0 = Clock::now();
    const auto s = solve_sum(inst);
    const double ms = ms_since(t0);
    const double want_tau[3] = {0.2441, 0.7114, 0.0445};
    for (std::size_t k = 0; k < 3; ++k)
        o.require(std::abs(s.allocation[k] - want_tau[k]) <= 1e-3,
                  fmt("tau_%g = %.6f", double(k), s.allocation[k]));
    const auto& r = s.report;
    o.require(std::abs(r.per_user_rates[0] - 4.13) <= 0.01, fmt("R1 = %.4f (want 4.13 +- 0.01)", r.per_user_rates[0]));
    o.require(std::abs(r.per_user_rates[1] - 0.45) <= 0.01, fmt("R2 = %.4f (want 0.45 +- 0.01)", r.per_user_rates[1]));
    o.require(std::abs(r.sum_rate - 4.58) <= 0.01, fmt("sum = %.4f (want 4.58 +- 0.01)", r.sum_rate));
    o.require(ms < 1.0, fmt("runtime %.3f ms", ms));
    o.note(fmt("tau = [%.4f, %.4f, %.4f]", s.allocation[0], s.allocation[1], s.allocation[2]));
    // the rate of each user at the printed allocation, from the rate formula alone
    const auto at_printed = oracle::rates(two_user, {0.2441, 0.7114, 0.0445});
    o.note(fmt("rates at the printed tau: R1 = %.4f, R2 = %.4f, sum = %.4f", at_printed[0], at_printed[1],
               at_printed[0] + at_printed[1]));
    o.note(fmt("%.3f ms", ms));
    return o;
}

Outcome common_throughput() {
    Outcome o;
    NetworkInstance inst(two_user);
    const auto t0 = Clock::now();
    const auto s = solve_common(inst);
    const double ms = ms_since(t0);
    const auto& r = s.report.per_user_rates;
    o.require(std::abs(s.common_rate - 1.46) <= 0.02, fmt("common rate %.6f", s.common_rate));
    o.require(std::abs(r[0] - r[1]) <= 1e-6, fmt("rate spread %.3g", std::abs(r[0] - r[1])));
    o.require(std::abs(s.allocation.total() - 1.0) <= 1e-9, fmt("sum tau - 1 = %.3g", s.allocation.total() - 1.0));
    o.require(ms < 1000.0, fmt("runtime %.1f ms", ms));
    o.note(fmt("R = %.6f, tau = [%.4f, %.4f", s.common_rate, s.allocation[0], s.allocation[1]) +
           fmt(", %.4f], %.1f ms", s.allocation[2], ms));
    return o;
}

Outcome oracle_equivalence() {
    Outcome o;
    const auto t0 = Clock::now();
    std::mt19937_64 rng(20240501);
    std::uniform_real_distribution<double> g(0.1, 300.0);
    std::uniform_int_distribution<int> users(1, 3);
    double worst_sum = 0.0, worst_common = 0.0;
    for (int k = 0; k < 50; ++k) {
        std::vector<double> gamma(std::size_t(users(rng)));
        for (double& x : gamma)
            x = g(rng);
        NetworkInstance inst(gamma);
        const std::size_t K = gamma.size();
        // 1e-3 grid (reached from a 1e-2 pass) plus one local refinement at 1e-4
        auto grid_sum = oracle::simplex_search(
            K,
            [&](const std::vector<double>& t) {
                double s = 0.0;
                for (double r : oracle::rates(gamma, t))
                    s += r;
                return s;
            },
            0.01, 1e-4);
        auto grid_min = oracle::simplex_search(
            K,
            [&](const std::vector<double>& t) {
                double m = 1e300;
                for (double r : oracle::rates(gamma, t))
                    m = std::min(m, r);
                return m;
            },
            0.01, 1e-4);
        worst_sum = std::max(worst_sum, std::abs(solve_sum(inst).report.sum_rate - grid_sum.value));
        worst_common = std::max(worst_common, std::abs(solve_common(inst).common_rate - grid_min.value));
    }
    const double s = ms_since(t0) / 1000.0;
    o.require(worst_sum <= 1e-3, fmt("worst sum gap %.3g", worst_sum));
    o.require(worst_common <= 1e-3, fmt("worst common gap %.3g", worst_common));
    o.require(s < 120.0, fmt("runtime %.1f s", s));
    o.note(fmt("worst gaps: sum %.2e, common %.2e, %.1f s", worst_sum, worst_common, s));
    return o;
}

Outcome kkt_residuals() {
    Outcome o;
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> g(0.1, 300.0), w(0.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
        const std::size_t K = 1 + std::size_t(k % 5);
        std::vector<double> gamma(K), lam(K);
        for (std::size_t i = 0; i < K; ++i) {
            gamma[i] = g(rng);
            lam[i] = 0.01 + w(rng);
        }
        NetworkInstance inst(gamma);
        Weights weights(lam);
        const auto sol = solve_weighted_sum(inst, weights);
        const auto res = weighted_sum_residuals(inst, weights, sol);
        worst = std::max({worst, res.per_user, res.coupling});
    }
    double worst_unit = 0.0;
    for (int k = 0; k < 100; ++k) {
        std::vector<double> gamma(1 + std::size_t(k % 5));
        for (double& x : gamma)
            x = g(rng);
        NetworkInstance inst(gamma);
        const auto a = solve_weighted_sum(inst, Weights::unit(gamma.size())).allocation;
        const auto b = solve_sum(inst).allocation;
        for (std::size_t j = 0; j <= gamma.size(); ++j)
            worst_unit = std::max(worst_unit, std::abs(a[j] - b[j]));
    }
    o.require(worst <= 1e-9, fmt("worst residual %.3g", worst));
    o.require(worst_unit <= 1e-8, fmt("unit-weight deviation %.3g", worst_unit));
    o.note(fmt("worst residual %.2e, unit-weight deviation %.2e", worst, worst_unit));
    return o;
}

Outcome concavity_hessian() {
    Outcome o;
    std::mt19937_64 rng(31337);
    std::uniform_real_distribution<double> g(0.1, 300.0);
    std::normal_distribution<double> n01;

    int midpoint_failures = 0;
    for (int k = 0; k < 1000; ++k) {
        const double gamma = g(rng);
        const auto a = oracle::random_simplex_point(rng, 3);
        const auto b = oracle::random_simplex_point(rng, 3);
        const double mid = user_rate(gamma, 0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1]));
        const double avg = 0.5 * (user_rate(gamma, a[0], a[1]) + user_rate(gamma, b[0], b[1]));
        midpoint_failures += mid < avg - 1e-9;
    }

    // second differences of the rate formula in extended precision
    auto rate_ld = [](long double gamma, long double t0, long double ti) {
        return ti * std::log1p(gamma * t0 / ti) / std::log(2.0L);
    };
    int fd_failures = 0, nsd_failures = 0;
    double worst_rel = 0.0;
    const long double h = 1e-5L;
    for (int p = 0; p < 100; ++p) {
        const std::vector<double> gamma{g(rng), g(rng)};
        auto x = oracle::random_simplex_point(rng, 3);
        for (double& v : x)
            v = 0.02 + 0.94 * v; // keep away from the boundary
        double s = x[0] + x[1] + x[2];
        for (double& v : x)
            v /= s;
        NetworkInstance inst(gamma);
        TimeAllocation alloc(x);
        for (std::size_t u = 0; u < 2; ++u) {
            const auto H = rate_hessian(inst, alloc, u);
            const std::size_t si = u + 1;
            auto R = [&](long double a, long double b) { return rate_ld(gamma[u], a, b); };
            const long double a = x[0], b = x[si];
            const long double faa = (R(a + h, b) - 2 * R(a, b) + R(a - h, b)) / (h * h);
            const long double fbb = (R(a, b + h) - 2 * R(a, b) + R(a, b - h)) / (h * h);
            const long double fab = (R(a + h, b + h) - R(a + h, b - h) - R(a - h, b + h) + R(a - h, b - h)) / (4 * h * h);
            const double pairs[3][2] = {{H(0, 0), double(faa)},
                                        {H(Eigen::Index(si), Eigen::Index(si)), double(fbb)},
                                        {H(0, Eigen::Index(si)), double(fab)}};
            for (const auto& pr : pairs) {
                const double rel = std::abs(pr[0] - pr[1]) / std::max(1.0, std::abs(pr[0]));
                worst_rel = std::max(worst_rel, rel);
                fd_failures += rel > 1e-5;
            }
            for (int v = 0; v < 100; ++v) {
                Eigen::Vector3d d(n01(rng), n01(rng), n01(rng));
                nsd_failures += d.dot(H * d) > 1e-12;
            }
        }
    }
    o.require(midpoint_failures == 0, std::to_string(midpoint_failures) + " midpoint violations");
    o.require(fd_failures == 0, std::to_string(fd_failures) + " Hessian entries off");
    o.require(nsd_failures == 0, std::to_string(nsd_failures) + " positive curvature samples");
    o.note(fmt("worst Hessian rel. error %.2e", worst_rel));
    return o;
}

Outcome monotone_tau0() {
    Outcome o;
    double prev = 2.0, worst = 0.0;
    for (double A : {0.1, 0.5, 1.0, 5.0, 10.0, 50.0, 100.0, 1000.0}) {
        const auto s = solve_sum(NetworkInstance({A}));
        o.require(s.allocation.dl() < prev, fmt("tau0 not decreasing at A = %g", A));
        prev = s.allocation.dl();
        worst = std::max(worst, std::abs(tau0_alternative_form(s.z_star) - s.allocation.dl()));
    }
    o.require(worst <= 1e-12, fmt("closed forms differ by %.3g", worst));
    o.note(fmt("closed forms agree to %.2e", worst));
    return o;
}

Outcome sign_flip() {
    Outcome o;
    ScenarioConfig c;
    c.user_distances = {5.0, 10.0};
    c.fading = Fading::none;
    c.trials = 1;
    double prev = 0.0, worst = 0.0;
    std::string ratios;
    for (double a : {2.0, 2.5, 3.0, 3.5, 4.0}) {
        c.pathloss_exponent_dl = c.pathloss_exponent_ul = a;
        const auto inst = effective_snr(c.physical, draw_channels(c, 0));
        const auto s = solve_sum(inst);
        worst = std::max(worst, std::abs(s.allocation.ul(1) / s.allocation.ul(0) - std::pow(0.5, 2.0 * a)));
        const auto cm = solve_common(inst);
        const double r = cm.allocation.ul(1) / cm.allocation.ul(0);
        o.require(r > 1.0 && r > prev, fmt("common ratio %.4f at alpha %.1f", r, a));
        prev = r;
        ratios += fmt(" %.3f", r);
    }
    o.require(worst <= 1e-10, fmt("sum ratio off by %.3g", worst));
    o.note(fmt("sum ratio error %.2e; common ratios:", worst) + ratios);
    return o;
}

Outcome monte_carlo() {
    Outcome o;
    const auto t0 = Clock::now();
    ScenarioConfig c; // section V constants, D = (5, 10) m, alpha = 2, Rayleigh fading
    c.trials = 200;
    c.seed = 2014;
    const std::vector<Scheme> schemes{Scheme::sum_opt, Scheme::common_opt, Scheme::eta};
    const auto r = run_comparison(c, schemes);
    const auto& sum = r.schemes.at(Scheme::sum_opt);
    const auto& com = r.schemes.at(Scheme::common_opt);
    o.require(r.trials_failed == 0, std::to_string(r.trials_failed) + " failed trials");
    o.require(sum.mean_rates[0] > 3.0 * sum.mean_rates[1],
              fmt("(a) U1 %.4f vs U2 %.4f", sum.mean_rates[0], sum.mean_rates[1]));
    o.require(com.mean_min_rate < sum.mean_sum_rate / 2.0,
              fmt("(b) common %.4f vs sum/K %.4f", com.mean_min_rate, sum.mean_sum_rate / 2.0));
    o.require(r.dominance_violations == 0, "(c) " + std::to_string(r.dominance_violations) + " trials violate dominance");
    o.note(fmt("(a) U1/U2 = %.2f, (b) common %.4f < sum/K %.4f", sum.mean_rates[0] / sum.mean_rates[1],
               com.mean_min_rate, sum.mean_sum_rate / 2.0));

    const auto pts = sweep_users(c, {1, 2, 5, 10}, {Scheme::sum_opt, Scheme::common_opt});
    double prev_sum = 1e300, prev_com = 1e300;
    std::string trend;
    for (const auto& p : pts) {
        const double ns = p.result.schemes.at(Scheme::sum_opt).mean_sum_rate / p.value;
        const double cr = p.result.schemes.at(Scheme::common_opt).mean_min_rate;
        o.require(ns < prev_sum, fmt("(d) normalized sum %.4f at K = %g not below the previous K", ns, p.value));
        o.require(cr < prev_com, fmt("(d) common %.4f at K = %g not below the previous K", cr, p.value));
        o.require(p.result.trials_failed == 0, fmt("(d) failed trials at K = %g", p.value));
        prev_sum = ns;
        prev_com = cr;
        trend += fmt(" K=%g: %.4f/%.4f", p.value, ns, cr);
    }
    const double s = ms_since(t0) / 1000.0;
    o.require(s < 300.0, fmt("runtime %.1f s", s));
    o.note("(d) sum/K and common:" + trend + fmt(", %.1f s", s));
    return o;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism(const std::string& cli) {
    Outcome o;
    if (cli.empty()) {
        o.require(false, "no CLI path given");
        return o;
    }
    const fs::path dir = fs::temp_directory_path() / ("wpcn_acceptance_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir);
    {
        std::ofstream(dir / "sim.cfg") << "distances_m = 5, 10\ntrials = 100\nseed = 5\nalphas = 2, 3\n"
                                          "k_values = 1, 3\n";
    }
    for (const char* cmd : {"simulate", "sweep-alpha", "sweep-users"}) {
        std::string outs[2];
        for (int k = 0; k < 2; ++k) {
            const fs::path out = dir / (std::string(cmd) + std::to_string(k) + ".csv");
            const std::string line = "\"" + cli + "\" " + cmd + " --config \"" + (dir / "sim.cfg").string() +
                                     "\" --out \"" + out.string() + "\" --quiet";
            const int rc = std::system(line.c_str());
            o.require(rc == 0, std::string(cmd) + " exited with " + std::to_string(rc));
            outs[k] = slurp(out);
        }
        o.require(!outs[0].empty() && outs[0] == outs[1], std::string(cmd) + " output differs between runs");
    }
    std::error_code ec;
    fs::remove_all(dir, ec);
    o.note("simulate, sweep-alpha, sweep-users rerun byte-identical");
    return o;
}

} // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"single-user optimum", single_user},
        {"two-user sum optimum", two_user_sum},
        {"common throughput", common_throughput},
        {"oracle equivalence", oracle_equivalence},
        {"weighted-sum KKT residuals", kkt_residuals},
        {"concavity and Hessian", concavity_hessian},
        {"tau0 monotone in A", monotone_tau0},
        {"near-far sign flip", sign_flip},
        {"Monte Carlo trends", monte_carlo},
        {"simulate determinism", [&] { return determinism(cli); }},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome r;
        try {
            r = criteria[k].run();
        } catch (const std::exception& e) {
            r.require(false, std::string("exception: ") + e.what());
        }
        failed += !r.pass;
        std::printf("%s %2zu %s: %s\n", r.pass ? "PASS" : "FAIL", k + 1, criteria[k].name, r.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
